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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fdxsim/montecarlo.hpp"

namespace fdxsim {

/// Filesystem failure while writing results.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bumped whenever a CSV column is added, removed or reordered.
inline constexpr int kCsvSchemaVersion = 1;

/**
 * Sweep results as CSV. The first line is a `#` comment carrying the schema
 * version; columns are
 * <variable>,scheme,mean_rate,stderr_rate,mean_mse,stderr_mse,feasible_frac,n_runs,mean_rate_feasible
 */
void write_csv(std::ostream& os, const SweepResult& result);
std::string to_csv(const SweepResult& result);

nlohmann::json to_json(const SystemParams& p);
nlohmann::json to_json(const SweepSpec& spec);
/// Results plus the full sweep definition.
nlohmann::json to_json(const SweepResult& result);

/// Human-readable table with a fixed column order.
void write_summary(std::ostream& os, const SweepResult& result);

/// Write via a temporary file in the same directory and rename on success.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/**
 * One channel-dump record (a single JSON line): run index plus every channel
 * flattened row-major into [re, im, re, im, ...]. The canceller is optional.
 */
nlohmann::json channel_record(std::uint64_t point, std::uint64_t run, const ChannelSet<double>& ch,
                              const CancellerConfig<double>* canceller = nullptr);

/// Regenerates every realization of `spec` and writes one record per line.
void write_channel_dump(std::ostream& os, const SweepSpec& spec);

/// Inverse of the flattening used in channel records.
CMatrix unflatten(const nlohmann::json& values, Eigen::Index rows, Eigen::Index cols);

} // namespace fdxsim
