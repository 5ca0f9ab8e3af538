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

#include "fdxsim/types.hpp"

namespace fdxsim {

/**
 * Achievable DL rate (bit/s/Hz) with imperfect CSI:
 *
 *   log2(1 + (1 - tau^2) P_b |h_hat v|^2 / (sigma_u^2 + sigma_ru^2 + tau^2 P_b l_ub ||v||^2))
 */
template <typename DerivedH, typename DerivedV>
double rate_fd(double p_b, const Eigen::MatrixBase<DerivedH>& h_ub_hat, const Eigen::MatrixBase<DerivedV>& v_b,
               double tau_sq, double sigma_u_sq, double sigma_ru_sq, double gain_dl)
{
    if (h_ub_hat.size() != v_b.size())
        throw std::invalid_argument("rate_fd: channel/precoder size mismatch");
    const double v_norm_sq = static_cast<double>(v_b.squaredNorm());
    if (v_norm_sq > (1.0 + 1e-9) * (1.0 + 1e-9))
        throw std::invalid_argument("rate_fd: precoder norm exceeds 1");
    if (!(tau_sq >= 0.0 && tau_sq <= 1.0))
        throw std::invalid_argument("rate_fd: tau^2 must lie in [0, 1]");
    const double gain = static_cast<double>(std::norm((h_ub_hat.reshaped().array() * v_b.reshaped().array()).sum()));
    const double signal = (1.0 - tau_sq) * p_b * gain;
    const double interference = sigma_u_sq + sigma_ru_sq + tau_sq * p_b * gain_dl * v_norm_sq;
    return std::log2(1.0 + signal / interference);
}

/// HD rate: no residual SI at the UE, HD estimation error.
template <typename DerivedH, typename DerivedV>
double rate_hd(double p_b, const Eigen::MatrixBase<DerivedH>& h_ub_hat, const Eigen::MatrixBase<DerivedV>& v_b,
               double tau_sq_hd, double sigma_u_sq, double gain_dl)
{
    return rate_fd(p_b, h_ub_hat, v_b, tau_sq_hd, sigma_u_sq, 0.0, gain_dl);
}

/// Fraction of the packet that carries DL data under HD.
inline double hd_duty_cycle(int t_packet, int t_hd_pilots)
{
    return static_cast<double>(t_packet - t_hd_pilots) / static_cast<double>(t_packet);
}

/// Rates and estimation errors of one realization.
struct RateSample {
    double rate_fd_bps_hz = 0.0;
    double rate_hd_bps_hz = 0.0;
    double rate_hd_effective = 0.0;
    double mse_fd = 1.0;
    double mse_hd = 1.0;
};

} // namespace fdxsim
