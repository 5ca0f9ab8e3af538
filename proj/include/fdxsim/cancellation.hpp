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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdxsim/params.hpp"
#include "fdxsim/types.hpp"

namespace fdxsim {

/// Where the N analog taps go inside the N_b x N_b canceller matrix.
enum class PlacementStrategy { LargestAmplitude, RowWise, ColumnWise };

std::string_view to_string(PlacementStrategy s);
PlacementStrategy parse_strategy(std::string_view name);

struct TapPosition {
    Eigen::Index row;
    Eigen::Index col;
    bool operator==(const TapPosition&) const = default;
};

/**
 * @brief Select the tap positions for a given SI channel estimate.
 *
 * LargestAmplitude takes the n_taps largest |entries|, ties resolved by
 * row-major order. RowWise/ColumnWise take the first n_taps positions in
 * row-/column-major order and need n_taps divisible by the matrix size.
 * The result is sorted row-major.
 */
template <typename Derived>
std::vector<TapPosition> place_taps(const Eigen::MatrixBase<Derived>& h_bb_hat, int n_taps,
                                    PlacementStrategy strategy)
{
    const Eigen::Index n = h_bb_hat.rows();
    if (h_bb_hat.cols() != n)
        throw std::invalid_argument("place_taps: SI channel must be square");
    const Eigen::Index total = n * n;
    if (n_taps < 1 || n_taps > total)
        throw std::invalid_argument("place_taps: need 1 <= n_taps <= N_b^2, got " +
                                    std::to_string(n_taps));
    if (strategy != PlacementStrategy::LargestAmplitude && n_taps % n != 0)
        throw std::invalid_argument("place_taps: " + std::string(to_string(strategy)) +
                                    " needs n_taps divisible by N_b");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    switch (strategy) {
    case PlacementStrategy::LargestAmplitude:
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return std::abs(h_bb_hat(a / n, a % n)) > std::abs(h_bb_hat(b / n, b % n));
        });
        break;
    case PlacementStrategy::RowWise:
        break;
    case PlacementStrategy::ColumnWise:
        // k-th column-major position expressed as a row-major index
        for (Eigen::Index k = 0; k < total; ++k)
            order[static_cast<std::size_t>(k)] = (k % n) * n + k / n;
        break;
    }
    order.resize(static_cast<std::size_t>(n_taps));
    std::sort(order.begin(), order.end());

    std::vector<TapPosition> out;
    out.reserve(order.size());
    for (auto k : order)
        out.push_back({k / n, k % n});
    return out;
}

/// Attenuator/phase-shifter resolution. A step of zero disables that axis.
struct TapQuantizer {
    double atten_step_db = 0.02;
    double phase_step_deg = 0.13;
};

/**
 * Snap a tap value onto the hardware lattice: magnitude in dB and phase in
 * degrees each rounded half-away-from-zero to a multiple of the step.
 */
template <typename Real>
std::complex<Real> quantize_tap(std::complex<Real> ideal, const TapQuantizer& q)
{
    if (ideal == std::complex<Real>(0))
        throw std::invalid_argument("quantize_tap: zero tap has no phase");
    double mag_db = 20.0 * std::log10(static_cast<double>(std::abs(ideal)));
    double phase_deg = static_cast<double>(std::arg(ideal)) * 180.0 / std::numbers::pi;
    if (q.atten_step_db > 0.0)
        mag_db = std::round(mag_db / q.atten_step_db) * q.atten_step_db;
    if (q.phase_step_deg > 0.0)
        phase_deg = std::round(phase_deg / q.phase_step_deg) * q.phase_step_deg;
    if (q.atten_step_db <= 0.0 && q.phase_step_deg <= 0.0)
        return ideal;
    const double mag = std::pow(10.0, mag_db / 20.0);
    return std::polar(static_cast<Real>(mag), static_cast<Real>(phase_deg * std::numbers::pi / 180.0));
}

/**
 * @brief Analog and digital SI cancellers for both nodes.
 *
 * c_b holds quantized taps at the placed positions and zeros elsewhere;
 * the digital cancellers subtract whatever the analog stage left:
 * d_b = -(H_bb_hat + c_b), d_u = -(h_uu_hat + c_u).
 */
template <typename Real = double>
struct CancellerConfig {
    using T = Types<Real>;

    typename T::Matrix c_b;
    typename T::Complex c_u;
    typename T::Matrix d_b;
    typename T::Complex d_u;
    PlacementStrategy strategy = PlacementStrategy::RowWise;
    int n_taps = 0;
    std::vector<TapPosition> positions;
};

template <typename Real>
std::complex<Real> quantize_or_zero(std::complex<Real> ideal, const TapQuantizer& q)
{
    return ideal == std::complex<Real>(0) ? ideal : quantize_tap(ideal, q);
}

template <typename Real>
CancellerConfig<Real> build_canceller(const typename Types<Real>::Matrix& h_bb_hat,
                                      std::complex<Real> h_uu_hat, int n_taps,
                                      PlacementStrategy strategy, const TapQuantizer& q)
{
    CancellerConfig<Real> cfg;
    cfg.strategy = strategy;
    cfg.n_taps = n_taps;
    cfg.positions = place_taps(h_bb_hat, n_taps, strategy);
    cfg.c_b = Types<Real>::Matrix::Zero(h_bb_hat.rows(), h_bb_hat.cols());
    for (const auto& pos : cfg.positions)
        cfg.c_b(pos.row, pos.col) = quantize_or_zero<Real>(-h_bb_hat(pos.row, pos.col), q);
    cfg.c_u = quantize_or_zero<Real>(-h_uu_hat, q);
    cfg.d_b = -(h_bb_hat + cfg.c_b);
    cfg.d_u = -(h_uu_hat + cfg.c_u);
    return cfg;
}

inline TapQuantizer quantizer_of(const SystemParams& p) { return {p.atten_step_db, p.phase_step_deg}; }

template <typename Real>
CancellerConfig<Real> build_canceller(const typename Types<Real>::Matrix& h_bb_hat,
                                      std::complex<Real> h_uu_hat, const SystemParams& p,
                                      PlacementStrategy strategy)
{
    return build_canceller<Real>(h_bb_hat, h_uu_hat, p.n_taps, strategy, quantizer_of(p));
}

/// Slack allowed on unit-norm precoders: 1e-9, or a few ulps for float.
template <typename Real>
constexpr Real norm_tolerance()
{
    return std::max(Real(1e-9), Real(64) * std::numeric_limits<Real>::epsilon());
}

template <typename Real>
struct BsResidual {
    typename Types<Real>::RealVector per_chain_after_analog;
    Real after_analog = 0; // sum over chains
    Real after_digital = 0;
};

/**
 * Residual SI power at the BS receive chains.
 *
 * Digital cancellation can never suppress more than `digital_suppression`
 * (linear) below the after-analog power, so
 * after_digital = max(P_b ||(H + C + D) v||^2, after_analog / digital_suppression).
 */
template <typename Real>
BsResidual<Real> residual_si_power_bs(const typename Types<Real>::Matrix& h_bb,
                                      const typename Types<Real>::Matrix& c_b,
                                      const typename Types<Real>::Matrix& d_b,
                                      const typename Types<Real>::Vector& v_b, Real p_b,
                                      Real digital_suppression)
{
    const auto n = h_bb.rows();
    if (h_bb.cols() != n || c_b.rows() != n || c_b.cols() != n || d_b.rows() != n ||
        d_b.cols() != n || v_b.size() != n)
        throw std::invalid_argument("residual_si_power_bs: dimension mismatch");
    if (v_b.norm() > Real(1) + norm_tolerance<Real>())
        throw std::invalid_argument("residual_si_power_bs: precoder norm exceeds 1");

    BsResidual<Real> r;
    const typename Types<Real>::Vector analog = (h_bb + c_b) * v_b;
    r.per_chain_after_analog = p_b * analog.cwiseAbs2();
    r.after_analog = r.per_chain_after_analog.sum();
    const Real subtracted = p_b * ((h_bb + c_b + d_b) * v_b).squaredNorm();
    r.after_digital = std::max(subtracted, r.after_analog / digital_suppression);
    return r;
}

template <typename Real>
struct UeResidual {
    Real after_analog = 0;
    Real after_digital = 0;
};

template <typename Real>
UeResidual<Real> residual_si_power_ue(std::complex<Real> h_uu, std::complex<Real> c_u,
                                      std::complex<Real> d_u, Real p_u, Real digital_suppression)
{
    UeResidual<Real> r;
    r.after_analog = p_u * std::norm(h_uu + c_u);
    r.after_digital = std::max(p_u * std::norm(h_uu + c_u + d_u), r.after_analog / digital_suppression);
    return r;
}

} // namespace fdxsim
