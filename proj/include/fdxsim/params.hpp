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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdxsim {

/// Thrown for any invalid configuration; the message lists every violation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// dBm -> milliwatts. All internal powers are milliwatt-referenced.
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

/// Receiver headroom kept below ADC full scale (gain-control margin).
inline constexpr double kDefaultAdcBackoffDb = 13.8;

/// Usable ADC dynamic range: 6.02 dB per bit + 1.76 dB, less the signal PAPR
/// and the receiver backoff.
inline double dynamic_range_db(int adc_bits, double papr_db, double backoff_db = kDefaultAdcBackoffDb)
{
    if (adc_bits < 1)
        throw std::invalid_argument("dynamic_range_db: adc_bits must be >= 1");
    return 6.02 * adc_bits + 1.76 - papr_db - backoff_db;
}

/**
 * @brief Physical-layer configuration of one experiment.
 *
 * Everything is in dB/dBm here; convert once with to_linear() before doing
 * any arithmetic. Field names are the config-file keys.
 */
struct SystemParams {
    int n_b = 4;
    double p_b_dbm = 40.0;
    double p_u_dbm = 5.0;
    double pathloss_dl_db = 110.0;
    double pathloss_ul_db = 110.0;
    double pathloss_si_bs_db = 40.0;
    double pathloss_si_ue_db = 40.0;
    double rician_k_db = 35.0;
    double noise_floor_dbm = -110.0;
    int adc_bits = 14;
    double papr_db = 10.0;
    double adc_backoff_db = kDefaultAdcBackoffDb;
    double lambda_b_dbm = -47.76;
    double lambda_u_dbm = -47.76;
    double atten_step_db = 0.02;
    double phase_step_deg = 0.13;
    double digital_cancellation_db = 50.0;
    int t_packet = 400;
    int t_hd_pilots = 40;
    int n_taps = 16;
    // Variance of the SI-channel estimation error relative to the SI pathloss.
    // 0 means the SI channels are known exactly.
    double si_csi_error = 0.0;

    bool operator==(const SystemParams&) const = default;
};

/// Receiver saturation threshold implied by the ADC: noise floor + dynamic range.
inline double adc_threshold_dbm(const SystemParams& p)
{
    return p.noise_floor_dbm + dynamic_range_db(p.adc_bits, p.papr_db, p.adc_backoff_db);
}

/// Linear-domain view of SystemParams (powers in mW, pathlosses as gains).
struct LinearParams {
    int n_b;
    double p_b;
    double p_u;
    double gain_dl;    // l_{u,b}
    double gain_ul;    // l_{b,u}
    double gain_si_bs; // l_{b,b}
    double gain_si_ue; // l_{u,u}
    double rician_k;
    double noise;      // sigma_b^2 = sigma_u^2
    double lambda_b;
    double lambda_u;
    double digital_suppression;
    double atten_step_db;
    double phase_step_deg;
    int t_packet;
    int t_hd_pilots;
    int n_taps;
    double si_csi_error;
};

LinearParams to_linear(const SystemParams& p);

/// Every violated invariant, one human-readable line each. Empty when valid.
std::vector<std::string> check(const SystemParams& p);

/// Returns p unchanged, or throws ConfigError naming each violation.
const SystemParams& validate(const SystemParams& p);

} // namespace fdxsim
