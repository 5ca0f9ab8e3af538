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

// Acceptance checks against the bundled figure sweeps. Prints one PASS/FAIL
// line per criterion and exits non-zero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fdxsim/config.hpp"
#include "fdxsim/estimation.hpp"
#include "fdxsim/montecarlo.hpp"
#include "fdxsim/report.hpp"

using namespace fdxsim;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = FDXSIM_CONFIG_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

int report(const std::string& name, const Outcome& o, const std::string& summary)
{
    std::printf("%s %s: %s%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), summary.c_str(),
                o.detail.empty() ? "" : " | ", o.detail.c_str());
    std::fflush(stdout);
    return o.pass ? 0 : 1;
}

SweepResult run_config(const char* file)
{
    const auto spec = load_sweep_spec(kConfigs / file);
    return run_sweep(spec);
}

Outcome property_suite()
{
    Outcome o;
    const double kDeg = 180.0 / std::numbers::pi;

    o.require(std::abs(dynamic_range_db(14, 10.0) - 62.24) <= 0.005, "dynamic range != 62.24 dB");
    o.require(std::abs(adc_threshold_dbm(SystemParams{}) + 47.76) <= 0.005, "threshold != -47.76 dBm");

    RandomStream rng(8128);
    const TapQuantizer q;
    for (int k = 0; k < 100000; ++k) {
        const cdouble x = rng.complex_normal(1e-4);
        const cdouble y = quantize_tap(x, q);
        const double db = std::abs(20.0 * std::log10(std::abs(y) / std::abs(x)));
        double deg = std::fmod(std::abs(std::arg(y) - std::arg(x)) * kDeg, 360.0);
        deg = std::min(deg, 360.0 - deg);
        if (db > 0.01 + 1e-9 || deg > 0.065 + 1e-9) {
            o.require(false, "quantization error above half a step");
            break;
        }
    }

    int designs = 0;
    for (int n_taps : {4, 8, 12, 16}) {
        SystemParams p;
        p.n_taps = n_taps;
        const auto lin = to_linear(p);
        for (int k = 0; k < 250; ++k) {
            const auto ch = draw_channel_set<double>(p, rng);
            const double tau = 0.2 * rng.uniform();
            const auto est = couple_estimate<double>(ch.h_ub, tau, rng, lin.gain_dl);
            const CRowVector back = std::sqrt(1.0 - tau) * est.h_ub_hat + std::sqrt(tau) * est.e_ub;
            o.require((back - ch.h_ub).norm() <= 1e-10 * ch.h_ub.norm(), "estimate reconstruction");

            for (auto s : {PlacementStrategy::LargestAmplitude, PlacementStrategy::RowWise}) {
                const auto d = design<double>(ch, est.h_ub_hat, p, s);
                ++designs;
                const CMatrix qb = right_singular_basis<double>(ch.h_bb_hat + d.canceller.c_b);
                o.require((qb.adjoint() * qb - CMatrix::Identity(p.n_b, p.n_b)).norm() <= 1e-10, "Q^H Q != I");
                o.require(std::abs(d.v_b.norm() - 1.0) <= 1e-10, "precoder norm != 1");
                o.require((d.canceller.c_b.array() != cdouble(0.0)).count() == n_taps, "tap count != N");
                if (d.feasible) {
                    const Eigen::VectorXd chains =
                        lin.p_b * ((ch.h_bb + d.canceller.c_b) * d.v_b).cwiseAbs2();
                    o.require((chains.array() <= lin.lambda_b).all(), "feasible design saturates a BS chain");
                    o.require(lin.p_u * std::norm(ch.h_uu + d.canceller.c_u) <= lin.lambda_u,
                              "feasible design saturates the UE");
                }
            }
        }
    }

    for (int n_b = 1; n_b <= 2; ++n_b)
        for (int t = 1; t <= 3; ++t)
            for (int k = 0; k < 20; ++k) {
                CMatrix y(n_b, t);
                CVector s(t);
                for (Eigen::Index i = 0; i < y.size(); ++i)
                    y(i) = rng.complex_normal(1.0);
                for (Eigen::Index i = 0; i < t; ++i)
                    s(i) = rng.complex_normal(1.0);
                const CVector est = mmse_estimate(y, s);
                double energy = 0.0;
                for (int j = 0; j < t; ++j)
                    energy += std::norm(s(j));
                for (int i = 0; i < n_b; ++i) {
                    cdouble acc = 0.0;
                    for (int j = 0; j < t; ++j)
                        acc += y(i, j) * std::conj(s(j));
                    o.require(std::abs(est(i) - acc / (1.0 + energy)) <= 1e-13, "MMSE differs from scalar oracle");
                }
            }

    // finite differences of the estimation-error and rate expressions
    const CRowVector h = draw_rayleigh<double>(1, 4, 110.0, rng);
    const CVector v = h.adjoint() / h.norm();
    for (double p_u : {0.01, 1.0, 100.0})
        for (int t : {1, 40, 400}) {
            const double fd = tau_sq_fd(p_u, h, 1e-11, 1e-11, t);
            const double hd = tau_sq_hd(p_u, h.transpose(), 1e-11, t);
            o.require(tau_sq_fd(p_u * 1.001, h, 1e-11, 1e-11, t) < fd, "FD error not decreasing in P_u");
            o.require(tau_sq_fd(p_u, h, 1e-11, 1e-11, t + 1) < fd, "FD error not decreasing in T");
            o.require(tau_sq_fd(p_u, h, 1e-11, 1.001e-11, t) > fd, "FD error not increasing in residual SI");
            o.require(tau_sq_hd(p_u * 1.001, h.transpose(), 1e-11, t) < hd, "HD error not decreasing in P_u");
            o.require(tau_sq_hd(p_u, h.transpose(), 1e-11, t + 1) < hd, "HD error not decreasing in T_HD");
            const double r = rate_fd(1e4, h, v, fd, 1e-11, 1e-11, 1e-11);
            o.require(rate_fd(1e4, h, v, fd * 1.001, 1e-11, 1e-11, 1e-11) < r, "rate not decreasing in tau");
            o.require(rate_fd(1e4, h, v, fd, 1e-11, 1.001e-11, 1e-11) < r, "rate not decreasing in residual SI");
            o.require(rate_fd(1e4 * 1.001, h, v, fd, 1e-11, 1e-11, 1e-11) > r, "rate not increasing in P_b");
        }

    auto spec = load_sweep_spec(kConfigs / "fig2.yaml");
    spec.n_runs = 30;
    const auto serial = to_csv(run_sweep(spec, {1}));
    o.require(serial == to_csv(run_sweep(spec, {2})), "sweep differs with 2 workers");
    o.require(serial == to_csv(run_sweep(spec, {5})), "sweep differs with 5 workers");

    if (o.pass)
        o.detail = std::to_string(designs) + " designs re-checked";
    return o;
}

} // namespace

int main()
{
    int failures = 0;

    const auto fig2 = run_config("fig2.yaml");
    const auto fig3 = run_config("fig3.yaml");
    const auto fig4 = run_config("fig4.yaml");

    {
        Outcome o;
        const double fd = fig2.at(40.0, "FD-N16").mean_rate;
        const double hd = fig2.at(40.0, "HD").mean_rate;
        const double ratio = fd / hd;
        o.require(ratio >= 1.2 && ratio <= 1.6, "ratio outside [1.2, 1.6]");
        failures += report("fd_hd_ratio", o, fmt("FD-N16 %.3f / HD %.3f = %.3f at 40 dBm", fd, hd, ratio));
    }
    {
        Outcome o;
        const double n4 = fig2.at(40.0, "FD-N4").mean_rate;
        const double n8 = fig2.at(40.0, "FD-N8").mean_rate;
        const double n16 = fig2.at(40.0, "FD-N16").mean_rate;
        o.require(n16 - n4 < 1.0, fmt("N16 - N4 = %.3f >= 1.0", n16 - n4));
        o.require(n16 >= n8 && n8 >= n4, "tap ordering violated");
        failures += report("tap_budget_gap", o, fmt("N4 %.3f, N8 %.3f, N16 %.3f at 40 dBm", n4, n8, n16));
    }
    {
        Outcome o;
        double worst = 0.0;
        for (double x : fig2.spec.values) {
            if (x > 20.0)
                continue;
            const double gap = std::abs(fig2.at(x, "FD-N16").mean_rate - fig2.at(x, "FD-ideal-N16").mean_rate);
            worst = std::max(worst, gap);
            o.require(gap <= 0.2, fmt("gap %.3f at %.1f dBm", gap, x));
        }
        failures += report("low_power_ideal_csi", o, fmt("max |FD-N16 - ideal| = %.4f for P_b <= 20 dBm", worst));
    }
    {
        Outcome o;
        double spread_db = 0.0;
        for (double x : fig3.spec.values) {
            const double hd = fig3.at(x, "HD").mean_mse;
            double lo = 1.0, hi = 0.0;
            for (const char* s : {"FD-N4", "FD-N8", "FD-N16"}) {
                const double m = fig3.at(x, s).mean_mse;
                o.require(m < hd, std::string(s) + fmt(" MSE %.3g >= HD %.3g", m, hd));
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            spread_db = std::max(spread_db, 10.0 * std::log10(hi / lo));
        }
        o.require(spread_db <= 3.0, fmt("FD MSE spread %.2f dB", spread_db));
        failures += report("mse_dominance", o, fmt("FD below HD at all UL powers, FD spread %.2f dB", spread_db));
    }
    {
        Outcome o;
        double worst = 0.0;
        for (double x : fig4.spec.values) {
            if (!(x > 12.5))
                continue;
            const double gap = fig4.at(x, "FD-ideal-N16").mean_rate - fig4.at(x, "FD-N8").mean_rate;
            worst = std::max(worst, std::abs(gap));
            o.require(std::abs(gap) <= 1.0, fmt("gap %.3f at %.1f dBm", gap, x));
        }
        failures += report("high_ul_power_convergence", o,
                           fmt("max |ideal - FD-N8| = %.3f for P_u > 12.5 dBm", worst));
    }
    failures += report("property_suite", property_suite(), "invariants");

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
