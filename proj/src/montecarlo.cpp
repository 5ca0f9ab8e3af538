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

#include "fdxsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fdxsim/estimation.hpp"

namespace fdxsim {

FdOutcome evaluate_fd(const ChannelSet<double>& ch, const SystemParams& p, PlacementStrategy strategy,
                      CsiMode mode, RandomStream& rng)
{
    const LinearParams lin = to_linear(p);
    FdOutcome out;

    // The error draw is consumed in both modes so the stream stays aligned.
    CRowVector e(ch.h_ub.size());
    for (Eigen::Index i = 0; i < e.size(); ++i)
        e(i) = rng.complex_normal<double>(lin.gain_dl);

    if (mode == CsiMode::Ideal) {
        out.design = design<double>(ch, ch.h_ub, p, strategy);
        out.tau_sq = 0.0;
        out.mse = 0.0;
        if (out.design.feasible)
            out.rate = rate_fd(lin.p_b, ch.h_ub, out.design.v_b, 0.0, lin.noise, out.design.sigma_ru_sq,
                               lin.gain_dl);
        return out;
    }

    const auto oracle = design<double>(ch, ch.h_ub, p, strategy);
    out.tau_sq = tau_sq_fd(lin.p_u, ch.h_ub, lin.noise, oracle.sigma_rb_sq, lin.t_packet);
    out.mse = out.tau_sq;
    if (!(out.tau_sq < 1.0)) {
        // no usable pilots: the estimate is undefined and the rate is zero
        out.design = oracle;
        out.design.feasible = false;
        return out;
    }
    const auto est = couple_estimate<double>(ch.h_ub, out.tau_sq, e);
    out.design = design<double>(ch, est.h_ub_hat, p, strategy);
    if (out.design.feasible)
        out.rate = rate_fd(lin.p_b, est.h_ub_hat, out.design.v_b, out.tau_sq, lin.noise,
                           out.design.sigma_ru_sq, lin.gain_dl);
    return out;
}

HdOutcome evaluate_hd(const ChannelSet<double>& ch, const SystemParams& p, RandomStream& rng)
{
    const LinearParams lin = to_linear(p);
    HdOutcome out;
    CRowVector e(ch.h_ub.size());
    for (Eigen::Index i = 0; i < e.size(); ++i)
        e(i) = rng.complex_normal<double>(lin.gain_dl);

    out.mse = tau_sq_hd(lin.p_u, ch.h_bu, lin.noise, lin.t_hd_pilots);
    if (!(out.mse < 1.0))
        return out;
    const auto est = couple_estimate<double>(ch.h_ub, out.mse, e);
    const double norm = est.h_ub_hat.norm();
    if (norm == 0.0)
        return out;
    const CVector v = est.h_ub_hat.adjoint() / norm;
    out.rate = rate_hd(lin.p_b, est.h_ub_hat, v, out.mse, lin.noise, lin.gain_dl);
    out.rate_effective = hd_duty_cycle(lin.t_packet, lin.t_hd_pilots) * out.rate;
    return out;
}

RunOutcome run_single(const SystemParams& p, PlacementStrategy strategy, RandomStream& rng, CsiMode mode)
{
    validate(p);
    const auto ch = draw_channel_set<double>(p, rng);
    auto fd = evaluate_fd(ch, p, strategy, mode, rng);
    const auto hd = evaluate_hd(ch, p, rng);

    RunOutcome out;
    out.rates.rate_fd_bps_hz = fd.rate;
    out.rates.mse_fd = fd.mse;
    out.rates.rate_hd_bps_hz = hd.rate;
    out.rates.rate_hd_effective = hd.rate_effective;
    out.rates.mse_hd = hd.mse;
    out.design = std::move(fd.design);
    return out;
}

std::string_view to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::DlPowerDbm:
        return "dl_power_dbm";
    case SweepVariable::UlPowerDbm:
        return "ul_power_dbm";
    case SweepVariable::TapCount:
        return "tap_count";
    }
    return "unknown";
}

SweepVariable parse_variable(std::string_view name)
{
    for (auto v : {SweepVariable::DlPowerDbm, SweepVariable::UlPowerDbm, SweepVariable::TapCount})
        if (to_string(v) == name)
            return v;
    throw ConfigError("unknown sweep variable '" + std::string(name) +
                      "' (expected dl_power_dbm, ul_power_dbm or tap_count)");
}

std::string_view to_string(SchemeKind k)
{
    switch (k) {
    case SchemeKind::Fd:
        return "fd";
    case SchemeKind::FdIdealCsi:
        return "fd_ideal_csi";
    case SchemeKind::Hd:
        return "hd";
    case SchemeKind::HdPerSymbol:
        return "hd_per_symbol";
    }
    return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view name)
{
    for (auto k : {SchemeKind::Fd, SchemeKind::FdIdealCsi, SchemeKind::Hd, SchemeKind::HdPerSymbol})
        if (to_string(k) == name)
            return k;
    throw ConfigError("unknown scheme kind '" + std::string(name) +
                      "' (expected fd, fd_ideal_csi, hd or hd_per_symbol)");
}

std::string Scheme::label() const
{
    const std::string taps = n_taps > 0 ? "-N" + std::to_string(n_taps) : "";
    switch (kind) {
    case SchemeKind::Fd:
        return "FD" + taps;
    case SchemeKind::FdIdealCsi:
        return "FD-ideal" + taps;
    case SchemeKind::Hd:
        return "HD";
    case SchemeKind::HdPerSymbol:
        return "HD-per-symbol";
    }
    return "unknown";
}

SystemParams point_params(const SweepSpec& spec, double value, const Scheme& scheme)
{
    SystemParams p = spec.base;
    if (scheme.n_taps > 0)
        p.n_taps = scheme.n_taps;
    switch (spec.variable) {
    case SweepVariable::DlPowerDbm:
        p.p_b_dbm = value;
        break;
    case SweepVariable::UlPowerDbm:
        p.p_u_dbm = value;
        break;
    case SweepVariable::TapCount:
        p.n_taps = static_cast<int>(std::lround(value));
        break;
    }
    return p;
}

void validate(const SweepSpec& spec)
{
    std::vector<std::string> errors;
    if (spec.values.empty())
        errors.push_back("values must not be empty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1])) {
            errors.push_back("values must be strictly increasing");
            break;
        }
    if (spec.variable == SweepVariable::TapCount)
        for (double v : spec.values)
            if (v != std::round(v)) {
                errors.push_back("tap_count values must be integers");
                break;
            }
    if (spec.n_runs < 1)
        errors.push_back("n_runs must be >= 1");
    if (spec.schemes.empty())
        errors.push_back("at least one scheme is required");
    for (const auto& s : spec.schemes)
        if (s.n_taps < 0)
            errors.push_back("scheme " + s.label() + ": taps must be >= 0");

    if (errors.empty()) {
        for (double v : spec.values) {
            for (const auto& s : spec.schemes) {
                const auto p = point_params(spec, v, s);
                for (const auto& e : check(p)) {
                    std::ostringstream os;
                    os << "point " << v << ", scheme " << s.label() << ": " << e;
                    errors.push_back(os.str());
                }
                if (s.kind == SchemeKind::Fd || s.kind == SchemeKind::FdIdealCsi) {
                    if (spec.strategy != PlacementStrategy::LargestAmplitude && p.n_b > 0 &&
                        p.n_taps % p.n_b != 0) {
                        std::ostringstream os;
                        os << "point " << v << ", scheme " << s.label() << ": " << to_string(spec.strategy)
                           << " needs n_taps divisible by n_b";
                        errors.push_back(os.str());
                    }
                }
            }
        }
    }
    if (errors.empty())
        return;
    std::ostringstream os;
    os << "invalid sweep '" << spec.name << "':";
    for (const auto& e : errors)
        os << "\n  - " << e;
    throw ConfigError(os.str());
}

const PointStats& SweepResult::at(double value, std::string_view scheme) const
{
    for (const auto& r : rows)
        if (r.value == value && r.scheme == scheme)
            return r;
    std::ostringstream os;
    os << "no result for point " << value << " scheme " << scheme;
    throw std::out_of_range(os.str());
}

int resolve_worker_count(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FDXSIM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0)
            n = std::min(n, cap);
    }
    return std::max(n, 1);
}

MeanStderr mean_stderr(const std::vector<double>& xs)
{
    MeanStderr r;
    if (xs.empty())
        return r;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    r.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2)
        return r;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - r.mean) * (x - r.mean);
    const double n = static_cast<double>(xs.size());
    r.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return r;
}

namespace {

struct RunRecord {
    double rate = 0.0;
    double mse = 1.0;
    bool feasible = false;
};

RunRecord evaluate_scheme(const ChannelSet<double>& ch, const SystemParams& p, const SweepSpec& spec,
                          const Scheme& scheme, std::uint64_t point, std::uint64_t run)
{
    RunRecord rec;
    switch (scheme.kind) {
    case SchemeKind::Fd:
    case SchemeKind::FdIdealCsi: {
        auto rng = substream(spec.seed, point, run, StreamPurpose::Estimation, 0);
        const auto mode = scheme.kind == SchemeKind::Fd ? CsiMode::Estimated : CsiMode::Ideal;
        const auto fd = evaluate_fd(ch, p, spec.strategy, mode, rng);
        rec.rate = fd.rate;
        rec.mse = fd.mse;
        rec.feasible = fd.design.feasible;
        break;
    }
    case SchemeKind::Hd:
    case SchemeKind::HdPerSymbol: {
        auto rng = substream(spec.seed, point, run, StreamPurpose::Estimation, 1);
        const auto hd = evaluate_hd(ch, p, rng);
        rec.rate = scheme.kind == SchemeKind::Hd ? hd.rate_effective : hd.rate;
        rec.mse = hd.mse;
        rec.feasible = true;
        break;
    }
    }
    return rec;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opts)
{
    validate(spec);
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_runs = static_cast<std::size_t>(spec.n_runs);
    const int workers = std::min<int>(resolve_worker_count(opts.threads), spec.n_runs);

    SweepResult result;
    result.spec = spec;

    for (std::size_t point = 0; point < spec.values.size(); ++point) {
        const double value = spec.values[point];
        std::vector<SystemParams> params;
        for (const auto& s : spec.schemes)
            params.push_back(point_params(spec, value, s));

        // records[scheme * n_runs + run]; each slot written by exactly one worker
        std::vector<RunRecord> records(n_schemes * n_runs);
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto work = [&](int worker) {
            try {
                for (std::size_t run = static_cast<std::size_t>(worker); run < n_runs;
                     run += static_cast<std::size_t>(workers)) {
                    auto rng = substream(spec.seed, point, run, StreamPurpose::Channel);
                    const auto ch = draw_channel_set<double>(params.front(), rng);
                    for (std::size_t s = 0; s < n_schemes; ++s)
                        records[s * n_runs + run] = evaluate_scheme(ch, params[s], spec, spec.schemes[s], point, run);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        };

        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
        }
        if (failure)
            std::rethrow_exception(failure);

        for (std::size_t s = 0; s < n_schemes; ++s) {
            std::vector<double> rates(n_runs), mses(n_runs), feasible_rates;
            std::size_t feasible = 0;
            for (std::size_t run = 0; run < n_runs; ++run) {
                const auto& rec = records[s * n_runs + run];
                rates[run] = rec.rate;
                mses[run] = rec.mse;
                if (rec.feasible) {
                    ++feasible;
                    feasible_rates.push_back(rec.rate);
                }
            }
            const auto r = mean_stderr(rates);
            const auto m = mean_stderr(mses);
            PointStats row;
            row.value = value;
            row.scheme = spec.schemes[s].label();
            row.mean_rate = r.mean;
            row.stderr_rate = r.std_error;
            row.mean_mse = m.mean;
            row.stderr_mse = m.std_error;
            row.feasible_frac = static_cast<double>(feasible) / static_cast<double>(n_runs);
            row.n_runs = spec.n_runs;
            row.mean_rate_feasible = mean_stderr(feasible_rates).mean;
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

} // namespace fdxsim
