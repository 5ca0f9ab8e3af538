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

#include "fdxsim/params.hpp"

#include <sstream>

namespace fdxsim {

LinearParams to_linear(const SystemParams& p)
{
    LinearParams l{};
    l.n_b = p.n_b;
    l.p_b = dbm_to_mw(p.p_b_dbm);
    l.p_u = dbm_to_mw(p.p_u_dbm);
    l.gain_dl = db_to_linear(-p.pathloss_dl_db);
    l.gain_ul = db_to_linear(-p.pathloss_ul_db);
    l.gain_si_bs = db_to_linear(-p.pathloss_si_bs_db);
    l.gain_si_ue = db_to_linear(-p.pathloss_si_ue_db);
    l.rician_k = db_to_linear(p.rician_k_db);
    l.noise = dbm_to_mw(p.noise_floor_dbm);
    l.lambda_b = dbm_to_mw(p.lambda_b_dbm);
    l.lambda_u = dbm_to_mw(p.lambda_u_dbm);
    l.digital_suppression = db_to_linear(p.digital_cancellation_db);
    l.atten_step_db = p.atten_step_db;
    l.phase_step_deg = p.phase_step_deg;
    l.t_packet = p.t_packet;
    l.t_hd_pilots = p.t_hd_pilots;
    l.n_taps = p.n_taps;
    l.si_csi_error = p.si_csi_error;
    return l;
}

std::vector<std::string> check(const SystemParams& p)
{
    std::vector<std::string> errors;
    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v))
            errors.push_back(std::string(name) + " must be finite");
    };
    finite(p.p_b_dbm, "p_b_dbm");
    finite(p.p_u_dbm, "p_u_dbm");
    finite(p.pathloss_dl_db, "pathloss_dl_db");
    finite(p.pathloss_ul_db, "pathloss_ul_db");
    finite(p.pathloss_si_bs_db, "pathloss_si_bs_db");
    finite(p.pathloss_si_ue_db, "pathloss_si_ue_db");
    finite(p.rician_k_db, "rician_k_db");
    finite(p.noise_floor_dbm, "noise_floor_dbm");
    finite(p.papr_db, "papr_db");
    finite(p.adc_backoff_db, "adc_backoff_db");
    finite(p.lambda_b_dbm, "lambda_b_dbm");
    finite(p.lambda_u_dbm, "lambda_u_dbm");
    finite(p.atten_step_db, "atten_step_db");
    finite(p.phase_step_deg, "phase_step_deg");
    finite(p.digital_cancellation_db, "digital_cancellation_db");
    finite(p.si_csi_error, "si_csi_error");

    if (p.n_b < 1)
        errors.push_back("n_b must be a positive integer");
    if (p.adc_bits < 1)
        errors.push_back("adc_bits must be a positive integer");
    if (p.t_packet < 1)
        errors.push_back("t_packet must be a positive integer");
    if (p.t_hd_pilots < 1)
        errors.push_back("t_hd_pilots must be a positive integer");
    if (p.t_hd_pilots >= p.t_packet)
        errors.push_back("HD pilots must leave data symbols (t_hd_pilots < t_packet)");
    if (p.n_taps < 1)
        errors.push_back("n_taps must be >= 1");
    if (p.n_b >= 1 && p.n_taps > p.n_b * p.n_b)
        errors.push_back("tap budget exceeds N_b^2 (n_taps <= n_b*n_b)");
    if (p.atten_step_db < 0.0 || p.phase_step_deg < 0.0)
        errors.push_back("quantization steps must be >= 0");
    if (p.digital_cancellation_db < 0.0)
        errors.push_back("digital_cancellation_db must be >= 0");
    if (p.si_csi_error < 0.0)
        errors.push_back("si_csi_error must be >= 0");
    return errors;
}

const SystemParams& validate(const SystemParams& p)
{
    const auto errors = check(p);
    if (errors.empty())
        return p;
    std::ostringstream os;
    os << "invalid system parameters:";
    for (const auto& e : errors)
        os << "\n  - " << e;
    throw ConfigError(os.str());
}

} // namespace fdxsim
