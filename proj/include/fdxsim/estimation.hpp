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

#include "fdxsim/rng.hpp"
#include "fdxsim/types.hpp"

namespace fdxsim {

/**
 * @brief MMSE estimate of the UL channel from T received pilot columns.
 *
 * y_pilot is N_b x T, pilots is T x 1. Returns (1 + s^H s)^-1 Y s^*.
 */
template <typename DerivedY, typename DerivedS>
auto mmse_estimate(const Eigen::MatrixBase<DerivedY>& y_pilot, const Eigen::MatrixBase<DerivedS>& pilots)
{
    using Complex = typename DerivedY::Scalar;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
    if (pilots.cols() != 1 || pilots.rows() < 1)
        throw std::invalid_argument("mmse_estimate: pilots must be a non-empty column");
    if (y_pilot.cols() != pilots.rows())
        throw std::invalid_argument("mmse_estimate: Y has " + std::to_string(y_pilot.cols()) +
                                    " columns but there are " + std::to_string(pilots.rows()) +
                                    " pilots");
    const auto energy = pilots.squaredNorm();
    if (energy == 0)
        throw std::invalid_argument("mmse_estimate: pilots are all zero");
    Vector out = (y_pilot * pilots.conjugate()) / (decltype(energy)(1) + energy);
    return out;
}

/// FD estimation MSE: (1 + T P_u ||h||^2 / (sigma_b^2 + sigma_rb^2))^-1.
template <typename Derived>
double tau_sq_fd(double p_u, const Eigen::MatrixBase<Derived>& h_ub, double sigma_b_sq, double sigma_rb_sq,
                 int t)
{
    const double snr = p_u * static_cast<double>(h_ub.squaredNorm()) / (sigma_b_sq + sigma_rb_sq);
    return 1.0 / (1.0 + t * snr);
}

/// HD estimation MSE; the pilots see no residual SI.
template <typename Derived>
double tau_sq_hd(double p_u, const Eigen::MatrixBase<Derived>& h_bu, double sigma_b_sq, int t_hd)
{
    const double snr = p_u * static_cast<double>(h_bu.squaredNorm()) / sigma_b_sq;
    return 1.0 / (1.0 + t_hd * snr);
}

/**
 * @brief DL estimate tied to the true channel by the Gauss-Markov model
 *        h = sqrt(1 - tau^2) h_hat + tau e.
 */
template <typename Real = double>
struct EstimationResult {
    typename Types<Real>::RowVector h_ub_hat;
    Real tau_sq = 0;
    typename Types<Real>::RowVector e_ub;
};

/// Inverse-solve the Gauss-Markov relation for h_hat given the truth and an error draw.
template <typename Real>
EstimationResult<Real> couple_estimate(const typename Types<Real>::RowVector& h_ub_true, Real tau_sq,
                                       const typename Types<Real>::RowVector& e_ub)
{
    if (!(tau_sq >= 0) || !(tau_sq < 1))
        throw std::invalid_argument("couple_estimate: tau^2 must lie in [0, 1)");
    if (e_ub.size() != h_ub_true.size())
        throw std::invalid_argument("couple_estimate: error vector size mismatch");
    EstimationResult<Real> r;
    r.tau_sq = tau_sq;
    r.e_ub = e_ub;
    if (tau_sq == 0)
        r.h_ub_hat = h_ub_true;
    else
        r.h_ub_hat = (h_ub_true - std::sqrt(tau_sq) * e_ub) / std::sqrt(Real(1) - tau_sq);
    return r;
}

/// Draws e with IID CN(0, gain_dl) entries and couples.
template <typename Real>
EstimationResult<Real> couple_estimate(const typename Types<Real>::RowVector& h_ub_true, Real tau_sq,
                                       RandomStream& rng, Real gain_dl)
{
    typename Types<Real>::RowVector e(h_ub_true.size());
    for (Eigen::Index i = 0; i < e.size(); ++i)
        e(i) = rng.complex_normal<Real>(gain_dl);
    return couple_estimate<Real>(h_ub_true, tau_sq, e);
}

} // namespace fdxsim
