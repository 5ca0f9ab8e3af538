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

#include "fdxsim/cancellation.hpp"

namespace fdxsim {

std::string_view to_string(PlacementStrategy s)
{
    switch (s) {
    case PlacementStrategy::LargestAmplitude:
        return "largest_amplitude";
    case PlacementStrategy::RowWise:
        return "row_wise";
    case PlacementStrategy::ColumnWise:
        return "column_wise";
    }
    return "unknown";
}

PlacementStrategy parse_strategy(std::string_view name)
{
    for (auto s : {PlacementStrategy::LargestAmplitude, PlacementStrategy::RowWise,
                   PlacementStrategy::ColumnWise})
        if (to_string(s) == name)
            return s;
    throw ConfigError("unknown placement strategy '" + std::string(name) +
                      "' (expected largest_amplitude, row_wise or column_wise)");
}

} // namespace fdxsim
