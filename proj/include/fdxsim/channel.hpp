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

#include "fdxsim/params.hpp"
#include "fdxsim/rng.hpp"
#include "fdxsim/types.hpp"

namespace fdxsim {

/**
 * @brief One block-fading realization of every channel in the link.
 *
 * h_ub is always the transpose of h_bu (UL/DL reciprocity). The SI estimates
 * equal the true SI channels unless an SI estimation error is configured.
 */
template <typename Real = double>
struct ChannelSet {
    using T = Types<Real>;

    typename T::Matrix h_bb;      // BS SI channel, N_b x N_b
    typename T::Complex h_uu;     // UE SI channel
    typename T::Vector h_bu;      // UL channel, N_b x 1
    typename T::RowVector h_ub;   // DL channel, 1 x N_b
    typename T::Matrix h_bb_hat;
    typename T::Complex h_uu_hat;
};

/// IID CN(0, 10^(-pathloss_db/10)) entries.
template <typename Real = double>
typename Types<Real>::Matrix draw_rayleigh(Eigen::Index rows, Eigen::Index cols, double pathloss_db,
                                           RandomStream& rng)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("draw_rayleigh: dimensions must be >= 1");
    const Real var = static_cast<Real>(db_to_linear(-pathloss_db));
    typename Types<Real>::Matrix m(rows, cols);
    // Row-major fill so the draw order does not depend on Eigen's storage order.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = rng.complex_normal<Real>(var);
    return m;
}

/**
 * Rician fading with an all-ones line-of-sight matrix:
 * sqrt(l K / (K+1)) * 1 + sqrt(l / (K+1)) * CN(0, 1).
 * Total mean power per entry is l for every K.
 */
template <typename Real = double>
typename Types<Real>::Matrix draw_rician(Eigen::Index rows, Eigen::Index cols, double pathloss_db,
                                         double k_db, RandomStream& rng)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("draw_rician: dimensions must be >= 1");
    const double l = db_to_linear(-pathloss_db);
    const double k = db_to_linear(k_db);
    const Real los = static_cast<Real>(std::sqrt(l * k / (k + 1.0)));
    const Real nlos = static_cast<Real>(std::sqrt(l / (k + 1.0)));
    typename Types<Real>::Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = los + nlos * rng.complex_normal<Real>(Real(1));
    return m;
}

template <typename Real = double>
ChannelSet<Real> draw_channel_set(const SystemParams& p, RandomStream& rng)
{
    ChannelSet<Real> cs;
    cs.h_bb = draw_rician<Real>(p.n_b, p.n_b, p.pathloss_si_bs_db, p.rician_k_db, rng);
    cs.h_uu = draw_rician<Real>(1, 1, p.pathloss_si_ue_db, p.rician_k_db, rng)(0, 0);
    cs.h_bu = draw_rayleigh<Real>(p.n_b, 1, p.pathloss_ul_db, rng);
    cs.h_ub = cs.h_bu.transpose();

    cs.h_bb_hat = cs.h_bb;
    cs.h_uu_hat = cs.h_uu;
    if (p.si_csi_error > 0.0) {
        const Real var_bb = static_cast<Real>(p.si_csi_error * db_to_linear(-p.pathloss_si_bs_db));
        const Real var_uu = static_cast<Real>(p.si_csi_error * db_to_linear(-p.pathloss_si_ue_db));
        for (Eigen::Index i = 0; i < cs.h_bb.rows(); ++i)
            for (Eigen::Index j = 0; j < cs.h_bb.cols(); ++j)
                cs.h_bb_hat(i, j) += rng.complex_normal<Real>(var_bb);
        cs.h_uu_hat += rng.complex_normal<Real>(var_uu);
    }
    return cs;
}

} // namespace fdxsim
