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

// fdxsim command-line driver.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fdxsim/config.hpp"
#include "fdxsim/montecarlo.hpp"
#include "fdxsim/report.hpp"

#ifndef FDXSIM_CONFIG_DIR
#define FDXSIM_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace fdxsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    bool quiet = false;
};

void apply(SweepSpec& spec, const Overrides& o)
{
    if (o.seed)
        spec.seed = *o.seed;
    if (o.runs)
        spec.n_runs = *o.runs;
    validate(spec);
}

void run_and_write(const SweepSpec& spec, const fs::path& outdir, const Overrides& o)
{
    const auto result = run_sweep(spec);
    write_file_atomic(outdir / (spec.name + ".csv"), to_csv(result));
    write_file_atomic(outdir / (spec.name + ".json"), to_json(result).dump(2) + "\n");
    if (!o.quiet) {
        std::cout << "== " << spec.name << " (" << spec.n_runs << " runs/point, seed " << spec.seed << ")\n";
        write_summary(std::cout, result);
    }
}

fs::path default_config_dir()
{
    if (const char* env = std::getenv("FDXSIM_CONFIG_DIR"))
        return env;
    return FDXSIM_CONFIG_DIR;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fdxsim: full-duplex MIMO joint DL data / UL channel estimation simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path;
    std::string outdir = "results";
    std::string dump_path;
    std::string config_dir = default_config_dir().string();

    auto* run = app.add_subcommand("run", "Run one sweep from a config file");
    run->add_option("--config", config_path, "Sweep config (YAML)")->required();
    run->add_option("--out", outdir, "Output directory");
    run->add_option("--seed", overrides.seed, "Override the master seed");
    run->add_option("--runs", overrides.runs, "Override Monte Carlo runs per point");
    run->add_option("--dump-channels", dump_path, "Also write every channel realization (JSON lines)");
    run->add_flag("--quiet", overrides.quiet, "No summary table");

    auto* val = app.add_subcommand("validate", "Check a sweep config and print the resolved parameters");
    val->add_option("--config", config_path, "Sweep config (YAML)")->required();

    auto* figs = app.add_subcommand("figures", "Run the bundled fig2/fig3/fig4 sweeps");
    figs->add_option("--out", outdir, "Output directory");
    figs->add_option("--configs", config_dir, "Directory holding fig2.yaml, fig3.yaml, fig4.yaml");
    figs->add_option("--seed", overrides.seed, "Override the master seed");
    figs->add_option("--runs", overrides.runs, "Override Monte Carlo runs per point");
    figs->add_flag("--quiet", overrides.quiet, "No summary tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) {
            auto spec = load_sweep_spec(config_path);
            apply(spec, overrides);
            run_and_write(spec, outdir, overrides);
            if (!dump_path.empty()) {
                std::ostringstream os;
                write_channel_dump(os, spec);
                write_file_atomic(dump_path, os.str());
            }
        } else if (*val) {
            const auto spec = load_sweep_spec(config_path);
            std::cout << "ok: " << spec.name << ", " << spec.values.size() << " points, " << spec.schemes.size()
                      << " schemes, " << spec.n_runs << " runs\n";
            std::cout << "dynamic_range_db " << dynamic_range_db(spec.base.adc_bits, spec.base.papr_db, spec.base.adc_backoff_db) << "\n";
            std::cout << "lambda_b_dbm " << spec.base.lambda_b_dbm << "\n";
            std::cout << "lambda_u_dbm " << spec.base.lambda_u_dbm << "\n";
            std::cout << to_json(spec).dump(2) << "\n";
        } else if (*figs) {
            for (const char* name : {"fig2", "fig3", "fig4"}) {
                auto spec = load_sweep_spec(fs::path(config_dir) / (std::string(name) + ".yaml"));
                apply(spec, overrides);
                run_and_write(spec, outdir, overrides);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "fdxsim: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "fdxsim: i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "fdxsim: i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
