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

#include <filesystem>
#include <string>

#include "fdxsim/montecarlo.hpp"

namespace fdxsim {

// Sweep configs are YAML documents:
//
//   name: fig2
//   variable: dl_power_dbm          # dl_power_dbm | ul_power_dbm | tap_count
//   range: {start: -10, stop: 40, step: 5}   # or values: [..]
//   n_runs: 1000
//   seed: 2020
//   strategy: row_wise              # largest_amplitude | row_wise | column_wise
//   schemes:
//     - {kind: fd, taps: 4}         # fd | fd_ideal_csi | hd | hd_per_symbol
//   params:                         # SystemParams field names; omitted keys keep defaults
//     p_u_dbm: 5
//
// Unknown keys anywhere are rejected. When lambda_b_dbm is omitted it is
// derived from the ADC (noise floor + dynamic range); lambda_u_dbm defaults
// to lambda_b_dbm.

SystemParams parse_params_yaml(const std::string& text);
SweepSpec parse_sweep_yaml(const std::string& text);

/// Throws ConfigError (missing file, syntax, unknown keys, invalid values).
SweepSpec load_sweep_spec(const std::filesystem::path& path);

} // namespace fdxsim
