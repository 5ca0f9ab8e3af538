// SPDX-License-Identifier: Apache-2.0
//
// fdxsim: full-duplex MIMO link-level simulator
// Copyright (C) 2026 The fdxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fdxsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace fdxsim {

namespace {

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

template <typename Mat>
nlohmann::json flatten(const Mat& m)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out.push_back(m(i, j).real());
            out.push_back(m(i, j).imag());
        }
    return out;
}

nlohmann::json flatten_scalar(cdouble z) { return nlohmann::json::array({z.real(), z.imag()}); }

} // namespace

void write_csv(std::ostream& os, const SweepResult& result)
{
    os << "# fdxsim sweep csv schema=" << kCsvSchemaVersion << " name=" << result.spec.name << "\n";
    os << to_string(result.spec.variable)
       << ",scheme,mean_rate,stderr_rate,mean_mse,stderr_mse,feasible_frac,n_runs,mean_rate_feasible\n";
    for (const auto& r : result.rows) {
        os << num(r.value) << ',' << r.scheme << ',' << num(r.mean_rate) << ',' << num(r.stderr_rate) << ','
           << num(r.mean_mse) << ',' << num(r.stderr_mse) << ',' << num(r.feasible_frac) << ',' << r.n_runs
           << ',' << num(r.mean_rate_feasible) << '\n';
    }
}

std::string to_csv(const SweepResult& result)
{
    std::ostringstream os;
    write_csv(os, result);
    return os.str();
}

nlohmann::json to_json(const SystemParams& p)
{
    return {
        {"n_b", p.n_b},
        {"p_b_dbm", p.p_b_dbm},
        {"p_u_dbm", p.p_u_dbm},
        {"pathloss_dl_db", p.pathloss_dl_db},
        {"pathloss_ul_db", p.pathloss_ul_db},
        {"pathloss_si_bs_db", p.pathloss_si_bs_db},
        {"pathloss_si_ue_db", p.pathloss_si_ue_db},
        {"rician_k_db", p.rician_k_db},
        {"noise_floor_dbm", p.noise_floor_dbm},
        {"adc_bits", p.adc_bits},
        {"papr_db", p.papr_db},
        {"adc_backoff_db", p.adc_backoff_db},
        {"lambda_b_dbm", p.lambda_b_dbm},
        {"lambda_u_dbm", p.lambda_u_dbm},
        {"atten_step_db", p.atten_step_db},
        {"phase_step_deg", p.phase_step_deg},
        {"digital_cancellation_db", p.digital_cancellation_db},
        {"t_packet", p.t_packet},
        {"t_hd_pilots", p.t_hd_pilots},
        {"n_taps", p.n_taps},
        {"si_csi_error", p.si_csi_error},
    };
}

nlohmann::json to_json(const SweepSpec& spec)
{
    nlohmann::json schemes = nlohmann::json::array();
    for (const auto& s : spec.schemes)
        schemes.push_back({{"kind", std::string(to_string(s.kind))}, {"taps", s.n_taps}, {"label", s.label()}});
    return {
        {"name", spec.name},
        {"variable", std::string(to_string(spec.variable))},
        {"values", spec.values},
        {"n_runs", spec.n_runs},
        {"seed", spec.seed},
        {"strategy", std::string(to_string(spec.strategy))},
        {"schemes", schemes},
        {"params", to_json(spec.base)},
    };
}

nlohmann::json to_json(const SweepResult& result)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({
            {"value", r.value},
            {"scheme", r.scheme},
            {"mean_rate", r.mean_rate},
            {"stderr_rate", r.stderr_rate},
            {"mean_mse", r.mean_mse},
            {"stderr_mse", r.stderr_mse},
            {"feasible_frac", r.feasible_frac},
            {"n_runs", r.n_runs},
            {"mean_rate_feasible", r.mean_rate_feasible},
        });
    }
    return {{"schema_version", kCsvSchemaVersion}, {"spec", to_json(result.spec)}, {"results", rows}};
}

void write_summary(std::ostream& os, const SweepResult& result)
{
    const auto flags = os.flags();
    os << std::left << std::setw(14) << to_string(result.spec.variable) << std::setw(18) << "scheme"
       << std::right << std::setw(12) << "mean_rate" << std::setw(12) << "stderr" << std::setw(14) << "mean_mse"
       << std::setw(10) << "feasible" << '\n';
    for (const auto& r : result.rows) {
        os << std::left << std::setw(14) << num(r.value) << std::setw(18) << r.scheme << std::right << std::fixed
           << std::setprecision(4) << std::setw(12) << r.mean_rate << std::setw(12) << r.stderr_rate
           << std::scientific << std::setprecision(3) << std::setw(14) << r.mean_mse << std::fixed
           << std::setprecision(3) << std::setw(10) << r.feasible_frac << '\n';
    }
    os.flags(flags);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

nlohmann::json channel_record(std::uint64_t point, std::uint64_t run, const ChannelSet<double>& ch,
                              const CancellerConfig<double>* canceller)
{
    nlohmann::json rec = {
        {"point", point},
        {"run", run},
        {"n_b", ch.h_bb.rows()},
        {"h_bb", flatten(ch.h_bb)},
        {"h_uu", flatten_scalar(ch.h_uu)},
        {"h_bu", flatten(ch.h_bu)},
        {"h_ub", flatten(ch.h_ub)},
        {"h_bb_hat", flatten(ch.h_bb_hat)},
        {"h_uu_hat", flatten_scalar(ch.h_uu_hat)},
    };
    if (canceller) {
        nlohmann::json positions = nlohmann::json::array();
        for (const auto& pos : canceller->positions)
            positions.push_back({pos.row, pos.col});
        rec["canceller"] = {
            {"strategy", std::string(to_string(canceller->strategy))},
            {"n_taps", canceller->n_taps},
            {"positions", positions},
            {"c_b", flatten(canceller->c_b)},
            {"c_u", flatten_scalar(canceller->c_u)},
            {"d_b", flatten(canceller->d_b)},
            {"d_u", flatten_scalar(canceller->d_u)},
        };
    }
    return rec;
}

void write_channel_dump(std::ostream& os, const SweepSpec& spec)
{
    validate(spec);
    for (std::size_t point = 0; point < spec.values.size(); ++point) {
        const auto p = point_params(spec, spec.values[point], spec.schemes.front());
        for (std::size_t run = 0; run < static_cast<std::size_t>(spec.n_runs); ++run) {
            auto rng = substream(spec.seed, point, run, StreamPurpose::Channel);
            const auto ch = draw_channel_set<double>(p, rng);
            os << channel_record(point, run, ch).dump() << '\n';
        }
    }
}

CMatrix unflatten(const nlohmann::json& values, Eigen::Index rows, Eigen::Index cols)
{
    if (!values.is_array() || values.size() != static_cast<std::size_t>(2 * rows * cols))
        throw std::invalid_argument("unflatten: expected " + std::to_string(2 * rows * cols) + " numbers");
    CMatrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j, k += 2)
            m(i, j) = {values[k].get<double>(), values[k + 1].get<double>()};
    return m;
}

} // namespace fdxsim
