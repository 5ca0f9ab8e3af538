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

#include <stdexcept>

#include <Eigen/SVD>

#include "fdxsim/cancellation.hpp"
#include "fdxsim/channel.hpp"
#include "fdxsim/params.hpp"
#include "fdxsim/types.hpp"

namespace fdxsim {

/// Right-singular vectors of m, columns ordered by descending singular value.
template <typename Real>
typename Types<Real>::Matrix right_singular_basis(const typename Types<Real>::Matrix& m)
{
    if (!m.allFinite())
        throw std::domain_error("right_singular_basis: matrix has non-finite entries");
    Eigen::JacobiSVD<typename Types<Real>::Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixV();
}

/**
 * Precoder restricted to the span of the last `alpha` columns of q
 * (the weakest residual-SI directions), matched to the DL estimate inside
 * that span: v = F g, g = conj(F^T h^T) / ||F^T h^T||.
 */
template <typename Real>
typename Types<Real>::Vector subspace_precoder(const typename Types<Real>::Matrix& q, Eigen::Index alpha,
                                               const typename Types<Real>::RowVector& h_ub_hat)
{
    const Eigen::Index n = q.cols();
    if (alpha < 1 || alpha > n)
        throw std::invalid_argument("subspace_precoder: alpha out of range");
    if (h_ub_hat.size() != q.rows())
        throw std::invalid_argument("subspace_precoder: channel size mismatch");
    const auto f = q.rightCols(alpha);
    typename Types<Real>::Vector g = (f.transpose() * h_ub_hat.transpose()).conjugate();
    const Real norm = g.norm();
    if (norm == Real(0))
        return f.col(alpha - 1);
    return f * (g / norm);
}

/// alpha_used value reported when the single weakest direction (fallback) was accepted.
constexpr int fallback_alpha(Eigen::Index n_b) { return static_cast<int>(n_b) + 1; }

template <typename Real = double>
struct PrecoderChoice {
    typename Types<Real>::Vector v_b;
    int alpha_used = 0; // 0 when infeasible
    bool feasible = false;
};

/// Saturation constraints of the analog stage, one threshold per node (linear mW).
struct SaturationLimits {
    double p_b;
    double p_u;
    double lambda_b;
    double lambda_u;
};

template <typename Real>
bool bs_unsaturated(const typename Types<Real>::Matrix& analog_residual,
                    const typename Types<Real>::Vector& v_b, const SaturationLimits& lim)
{
    const typename Types<Real>::RealVector per_chain =
        static_cast<Real>(lim.p_b) * (analog_residual * v_b).cwiseAbs2();
    return (per_chain.array() <= static_cast<Real>(lim.lambda_b)).all();
}

/**
 * @brief Subspace search over the residual-SI singular directions.
 *
 * `analog_residual` is H_bb_hat + C_b. Tries alpha = N_b, ..., 2 and keeps
 * the first precoder whose per-chain residual stays under lambda_b; then the
 * single weakest direction. The UE constraint does not depend on v_b and is
 * checked up front.
 */
template <typename Real>
PrecoderChoice<Real> choose_precoder(const typename Types<Real>::Matrix& analog_residual,
                                     const typename Types<Real>::RowVector& h_ub_hat,
                                     Real ue_after_analog, const SaturationLimits& lim)
{
    const Eigen::Index n = analog_residual.rows();
    const auto q = right_singular_basis<Real>(analog_residual);

    PrecoderChoice<Real> out;
    out.v_b = q.col(n - 1);
    if (!(ue_after_analog <= static_cast<Real>(lim.lambda_u)))
        return out;

    for (Eigen::Index alpha = n; alpha >= 2; --alpha) {
        auto v = subspace_precoder<Real>(q, alpha, h_ub_hat);
        if (bs_unsaturated<Real>(analog_residual, v, lim)) {
            out.v_b = std::move(v);
            out.alpha_used = static_cast<int>(alpha);
            out.feasible = true;
            return out;
        }
    }
    if (bs_unsaturated<Real>(analog_residual, out.v_b, lim)) {
        out.alpha_used = fallback_alpha(n);
        out.feasible = true;
    }
    return out;
}

/**
 * @brief Result of the joint canceller/precoder design for one realization.
 *
 * The residual powers are evaluated on the true SI channels, so they include
 * the effect of any SI estimation error.
 */
template <typename Real = double>
struct DesignOutput {
    typename Types<Real>::Vector v_b;
    CancellerConfig<Real> canceller;
    int alpha_used = 0;
    bool feasible = false;
    Real sigma_rb_sq = 0;       // BS residual after analog + digital
    Real sigma_ru_sq = 0;       // UE residual after analog + digital
    Real bs_after_analog = 0;   // summed over chains
    Real ue_after_analog = 0;
};

inline SaturationLimits saturation_limits(const LinearParams& l)
{
    return {l.p_b, l.p_u, l.lambda_b, l.lambda_u};
}

/// Full design: canceller placement and quantization, then the subspace search.
template <typename Real>
DesignOutput<Real> design(const ChannelSet<Real>& ch, const typename Types<Real>::RowVector& h_ub_hat,
                          const SystemParams& p, PlacementStrategy strategy)
{
    if (h_ub_hat.size() != ch.h_bb.rows())
        throw std::invalid_argument("design: DL estimate size mismatch");
    const LinearParams lin = to_linear(p);
    const auto lim = saturation_limits(lin);
    const Real p_b = static_cast<Real>(lin.p_b);
    const Real p_u = static_cast<Real>(lin.p_u);
    const Real dig = static_cast<Real>(lin.digital_suppression);

    DesignOutput<Real> out;
    out.canceller = build_canceller<Real>(ch.h_bb_hat, ch.h_uu_hat, p, strategy);
    const auto& cfg = out.canceller;

    const typename Types<Real>::Matrix analog_residual = ch.h_bb_hat + cfg.c_b;
    const Real ue_hat_residual = p_u * std::norm(ch.h_uu_hat + cfg.c_u);

    auto choice = choose_precoder<Real>(analog_residual, h_ub_hat, ue_hat_residual, lim);
    out.v_b = std::move(choice.v_b);
    out.alpha_used = choice.alpha_used;
    out.feasible = choice.feasible;

    const auto bs = residual_si_power_bs<Real>(ch.h_bb, cfg.c_b, cfg.d_b, out.v_b, p_b, dig);
    const auto ue = residual_si_power_ue<Real>(ch.h_uu, cfg.c_u, cfg.d_u, p_u, dig);
    out.sigma_rb_sq = bs.after_digital;
    out.sigma_ru_sq = ue.after_digital;
    out.bs_after_analog = bs.after_analog;
    out.ue_after_analog = ue.after_analog;
    return out;
}

} // namespace fdxsim
