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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdxsim/cancellation.hpp"
#include "fdxsim/channel.hpp"
#include "fdxsim/link.hpp"
#include "fdxsim/params.hpp"
#include "fdxsim/precoder.hpp"

namespace fdxsim {

enum class CsiMode { Estimated, Ideal };

struct FdOutcome {
    double rate = 0.0;
    double mse = 1.0;
    DesignOutput<double> design;
    // tau^2 actually used for the rate; equals mse
    double tau_sq = 1.0;
};

struct HdOutcome {
    double rate = 0.0;
    double rate_effective = 0.0;
    double mse = 1.0;
};

/**
 * FD evaluation of one channel realization.
 *
 * Estimated CSI runs two design passes: the first uses the true DL channel
 * only to obtain the residual SI that sets tau^2; the second designs from the
 * coupled estimate and is the one whose rate is reported. Infeasible designs
 * score rate 0. Ideal CSI designs once on the true channel with tau^2 = 0.
 */
FdOutcome evaluate_fd(const ChannelSet<double>& ch, const SystemParams& p, PlacementStrategy strategy,
                      CsiMode mode, RandomStream& rng);

/// HD evaluation: T_HD pilots, no SI, maximum-ratio transmission on the HD estimate.
HdOutcome evaluate_hd(const ChannelSet<double>& ch, const SystemParams& p, RandomStream& rng);

struct RunOutcome {
    RateSample rates;
    DesignOutput<double> design;
};

/// One end-to-end realization drawn from a single stream.
RunOutcome run_single(const SystemParams& p, PlacementStrategy strategy, RandomStream& rng,
                      CsiMode mode = CsiMode::Estimated);

enum class SweepVariable { DlPowerDbm, UlPowerDbm, TapCount };

std::string_view to_string(SweepVariable v);
SweepVariable parse_variable(std::string_view name);

enum class SchemeKind { Fd, FdIdealCsi, Hd, HdPerSymbol };

std::string_view to_string(SchemeKind k);
SchemeKind parse_scheme_kind(std::string_view name);

/// One curve of a sweep. n_taps = 0 means "use the base parameters".
struct Scheme {
    SchemeKind kind = SchemeKind::Fd;
    int n_taps = 0;

    std::string label() const;
    bool operator==(const Scheme&) const = default;
};

struct SweepSpec {
    std::string name = "sweep";
    SweepVariable variable = SweepVariable::DlPowerDbm;
    std::vector<double> values;
    int n_runs = 1000;
    SystemParams base;
    PlacementStrategy strategy = PlacementStrategy::RowWise;
    std::vector<Scheme> schemes;
    std::uint64_t seed = 1;
};

/// Parameters of sweep point `value` for `scheme`.
SystemParams point_params(const SweepSpec& spec, double value, const Scheme& scheme);

/// Throws ConfigError listing everything wrong with the spec.
void validate(const SweepSpec& spec);

struct PointStats {
    double value = 0.0;
    std::string scheme;
    double mean_rate = 0.0;
    double stderr_rate = 0.0;
    double mean_mse = 0.0;
    double stderr_mse = 0.0;
    double feasible_frac = 0.0;
    int n_runs = 0;
    // mean over feasible runs only; 0 when no run was feasible
    double mean_rate_feasible = 0.0;
};

/// Rows are ordered point-major, then in the sweep's scheme order.
struct SweepResult {
    SweepSpec spec;
    std::vector<PointStats> rows;

    const PointStats& at(double value, std::string_view scheme) const;
};

struct SweepOptions {
    // 0: FDXSIM_THREADS if set, otherwise hardware concurrency
    int threads = 0;
};

int resolve_worker_count(int requested);

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opts = {});

/// Mean and standard error of the mean (sample std / sqrt(n); 0 for n < 2).
struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

} // namespace fdxsim
