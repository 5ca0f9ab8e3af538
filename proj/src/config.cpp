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

#include "fdxsim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace fdxsim {

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key)
{
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("config key '" + key + "' has an invalid value");
    }
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& known, const std::string& where)
{
    if (!map.IsMap())
        throw ConfigError(where + " must be a mapping");
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

SystemParams params_from_node(const YAML::Node& node)
{
    SystemParams p;
    std::map<std::string, std::function<void(const YAML::Node&)>> setters = {
        {"n_b", [&](const YAML::Node& n) { p.n_b = scalar<int>(n, "n_b"); }},
        {"p_b_dbm", [&](const YAML::Node& n) { p.p_b_dbm = scalar<double>(n, "p_b_dbm"); }},
        {"p_u_dbm", [&](const YAML::Node& n) { p.p_u_dbm = scalar<double>(n, "p_u_dbm"); }},
        {"pathloss_dl_db", [&](const YAML::Node& n) { p.pathloss_dl_db = scalar<double>(n, "pathloss_dl_db"); }},
        {"pathloss_ul_db", [&](const YAML::Node& n) { p.pathloss_ul_db = scalar<double>(n, "pathloss_ul_db"); }},
        {"pathloss_si_bs_db",
         [&](const YAML::Node& n) { p.pathloss_si_bs_db = scalar<double>(n, "pathloss_si_bs_db"); }},
        {"pathloss_si_ue_db",
         [&](const YAML::Node& n) { p.pathloss_si_ue_db = scalar<double>(n, "pathloss_si_ue_db"); }},
        {"rician_k_db", [&](const YAML::Node& n) { p.rician_k_db = scalar<double>(n, "rician_k_db"); }},
        {"noise_floor_dbm", [&](const YAML::Node& n) { p.noise_floor_dbm = scalar<double>(n, "noise_floor_dbm"); }},
        {"adc_bits", [&](const YAML::Node& n) { p.adc_bits = scalar<int>(n, "adc_bits"); }},
        {"papr_db", [&](const YAML::Node& n) { p.papr_db = scalar<double>(n, "papr_db"); }},
        {"adc_backoff_db", [&](const YAML::Node& n) { p.adc_backoff_db = scalar<double>(n, "adc_backoff_db"); }},
        {"lambda_b_dbm", [&](const YAML::Node& n) { p.lambda_b_dbm = scalar<double>(n, "lambda_b_dbm"); }},
        {"lambda_u_dbm", [&](const YAML::Node& n) { p.lambda_u_dbm = scalar<double>(n, "lambda_u_dbm"); }},
        {"atten_step_db", [&](const YAML::Node& n) { p.atten_step_db = scalar<double>(n, "atten_step_db"); }},
        {"phase_step_deg", [&](const YAML::Node& n) { p.phase_step_deg = scalar<double>(n, "phase_step_deg"); }},
        {"digital_cancellation_db",
         [&](const YAML::Node& n) { p.digital_cancellation_db = scalar<double>(n, "digital_cancellation_db"); }},
        {"t_packet", [&](const YAML::Node& n) { p.t_packet = scalar<int>(n, "t_packet"); }},
        {"t_hd_pilots", [&](const YAML::Node& n) { p.t_hd_pilots = scalar<int>(n, "t_hd_pilots"); }},
        {"n_taps", [&](const YAML::Node& n) { p.n_taps = scalar<int>(n, "n_taps"); }},
        {"si_csi_error", [&](const YAML::Node& n) { p.si_csi_error = scalar<double>(n, "si_csi_error"); }},
    };

    if (node && !node.IsNull()) {
        std::set<std::string> known;
        for (const auto& [k, _] : setters)
            known.insert(k);
        reject_unknown(node, known, "params");
        for (const auto& kv : node)
            setters.at(kv.first.as<std::string>())(kv.second);
    }
    const bool has_lambda_b = node && node.IsMap() && node["lambda_b_dbm"];
    const bool has_lambda_u = node && node.IsMap() && node["lambda_u_dbm"];
    if (!has_lambda_b && p.adc_bits >= 1)
        p.lambda_b_dbm = adc_threshold_dbm(p);
    if (!has_lambda_u)
        p.lambda_u_dbm = p.lambda_b_dbm;
    return p;
}

std::vector<double> values_from_range(const YAML::Node& range)
{
    reject_unknown(range, {"start", "stop", "step"}, "range");
    if (!range["start"] || !range["stop"] || !range["step"])
        throw ConfigError("range needs start, stop and step");
    const double start = scalar<double>(range["start"], "range.start");
    const double stop = scalar<double>(range["stop"], "range.stop");
    const double step = scalar<double>(range["step"], "range.step");
    if (!(step > 0.0))
        throw ConfigError("range.step must be > 0");
    std::vector<double> out;
    for (long k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop + 1e-9 * std::abs(step))
            break;
        out.push_back(v);
    }
    return out;
}

YAML::Node parse_document(const std::string& text)
{
    try {
        return YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config syntax error: ") + e.what());
    }
}

} // namespace

SystemParams parse_params_yaml(const std::string& text)
{
    return validate(params_from_node(parse_document(text)));
}

SweepSpec parse_sweep_yaml(const std::string& text)
{
    const auto root = parse_document(text);
    reject_unknown(root, {"name", "variable", "values", "range", "n_runs", "seed", "strategy", "schemes", "params"},
                   "sweep config");

    SweepSpec spec;
    if (root["name"])
        spec.name = scalar<std::string>(root["name"], "name");
    if (!root["variable"])
        throw ConfigError("sweep config needs 'variable'");
    spec.variable = parse_variable(scalar<std::string>(root["variable"], "variable"));

    if (root["values"] && root["range"])
        throw ConfigError("give either 'values' or 'range', not both");
    if (root["values"])
        spec.values = scalar<std::vector<double>>(root["values"], "values");
    else if (root["range"])
        spec.values = values_from_range(root["range"]);
    else
        throw ConfigError("sweep config needs 'values' or 'range'");

    if (root["n_runs"])
        spec.n_runs = scalar<int>(root["n_runs"], "n_runs");
    if (root["seed"])
        spec.seed = scalar<std::uint64_t>(root["seed"], "seed");
    if (root["strategy"])
        spec.strategy = parse_strategy(scalar<std::string>(root["strategy"], "strategy"));

    if (root["schemes"]) {
        const auto schemes = root["schemes"];
        if (!schemes.IsSequence())
            throw ConfigError("'schemes' must be a list");
        for (const auto& s : schemes) {
            reject_unknown(s, {"kind", "taps"}, "scheme entry");
            if (!s["kind"])
                throw ConfigError("scheme entry needs 'kind'");
            Scheme scheme;
            scheme.kind = parse_scheme_kind(scalar<std::string>(s["kind"], "kind"));
            if (s["taps"])
                scheme.n_taps = scalar<int>(s["taps"], "taps");
            spec.schemes.push_back(scheme);
        }
    } else {
        spec.schemes = {{SchemeKind::Fd, 0}, {SchemeKind::Hd, 0}};
    }

    spec.base = params_from_node(root["params"]);
    validate(spec);
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sweep_yaml(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

} // namespace fdxsim
