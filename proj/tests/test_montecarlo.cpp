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

#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <cstdlib>

#include "fdxsim/estimation.hpp"
#include "fdxsim/montecarlo.hpp"
#include "fdxsim/report.hpp"

using namespace fdxsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SweepSpec dl_sweep(int n_runs)
{
    SweepSpec spec;
    spec.name = "dl";
    spec.variable = SweepVariable::DlPowerDbm;
    for (double x = -10.0; x <= 40.0; x += 5.0)
        spec.values.push_back(x);
    spec.n_runs = n_runs;
    spec.seed = 20200402;
    spec.schemes = {{SchemeKind::Fd, 4},
                    {SchemeKind::Fd, 8},
                    {SchemeKind::Fd, 16},
                    {SchemeKind::FdIdealCsi, 16},
                    {SchemeKind::Hd, 0}};
    return spec;
}

} // namespace

TEST_CASE("run_single is deterministic")
{
    SystemParams p;
    RandomStream a(2024), b(2024);
    const auto ra = run_single(p, PlacementStrategy::RowWise, a);
    const auto rb = run_single(p, PlacementStrategy::RowWise, b);
    CHECK(ra.rates.rate_fd_bps_hz == rb.rates.rate_fd_bps_hz);
    CHECK(ra.rates.rate_hd_bps_hz == rb.rates.rate_hd_bps_hz);
    CHECK(ra.rates.rate_hd_effective == rb.rates.rate_hd_effective);
    CHECK(ra.rates.mse_fd == rb.rates.mse_fd);
    CHECK(ra.rates.mse_hd == rb.rates.mse_hd);
    CHECK(ra.design.v_b == rb.design.v_b);
    CHECK(ra.rates.rate_hd_effective == 0.9 * ra.rates.rate_hd_bps_hz);
}

TEST_CASE("All impairments off reaches the MRT bound")
{
    SystemParams p;
    p.n_taps = 16;
    p.atten_step_db = 0.0;
    p.phase_step_deg = 0.0;
    const auto lin = to_linear(p);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomStream rng(seed), replay(seed);
        const auto ch = draw_channel_set<double>(p, replay);
        const auto out = run_single(p, PlacementStrategy::LargestAmplitude, rng, CsiMode::Ideal);
        REQUIRE(out.design.feasible);
        REQUIRE_THAT(out.rates.rate_fd_bps_hz,
                     WithinRel(std::log2(1.0 + lin.p_b * ch.h_ub.squaredNorm() / lin.noise), 1e-9));
        REQUIRE(out.rates.mse_fd == 0.0);
    }
}

TEST_CASE("Estimated CSI follows the two-pass contract")
{
    SystemParams p;
    p.n_taps = 8;
    const auto lin = to_linear(p);
    for (std::uint64_t run = 0; run < 50; ++run) {
        auto crng = substream(1, 0, run, StreamPurpose::Channel);
        const auto ch = draw_channel_set<double>(p, crng);
        auto erng = substream(1, 0, run, StreamPurpose::Estimation);
        const auto fd = evaluate_fd(ch, p, PlacementStrategy::RowWise, CsiMode::Estimated, erng);

        const auto oracle = design<double>(ch, ch.h_ub, p, PlacementStrategy::RowWise);
        const double tau = tau_sq_fd(lin.p_u, ch.h_ub, lin.noise, oracle.sigma_rb_sq, lin.t_packet);
        REQUIRE(fd.tau_sq == tau);
        REQUIRE(fd.mse == tau);

        auto replay = substream(1, 0, run, StreamPurpose::Estimation);
        const auto est = couple_estimate<double>(ch.h_ub, tau, replay, lin.gain_dl);
        const auto second = design<double>(ch, est.h_ub_hat, p, PlacementStrategy::RowWise);
        REQUIRE(fd.design.v_b == second.v_b);
        REQUIRE(fd.design.feasible == second.feasible);
        if (second.feasible)
            REQUIRE(fd.rate == rate_fd(lin.p_b, est.h_ub_hat, second.v_b, tau, lin.noise, second.sigma_ru_sq,
                                       lin.gain_dl));
        else
            REQUIRE(fd.rate == 0.0);
    }
}

TEST_CASE("Infeasible runs score zero")
{
    SweepSpec spec;
    spec.values = {40.0};
    spec.n_runs = 20;
    spec.base.lambda_b_dbm = -400.0;
    spec.schemes = {{SchemeKind::Fd, 4}, {SchemeKind::FdIdealCsi, 16}, {SchemeKind::Hd, 0}};
    const auto res = run_sweep(spec, {1});
    for (const char* label : {"FD-N4", "FD-ideal-N16"}) {
        const auto& row = res.at(40.0, label);
        CHECK(row.mean_rate == 0.0);
        CHECK(row.feasible_frac == 0.0);
        CHECK(row.mean_rate_feasible == 0.0);
    }
    CHECK(res.at(40.0, "HD").mean_rate > 0.0);
    CHECK(res.at(40.0, "HD").feasible_frac == 1.0);
}

TEST_CASE("A one-run sweep reproduces the single realization")
{
    SweepSpec spec;
    spec.values = {30.0};
    spec.n_runs = 1;
    spec.seed = 5;
    spec.schemes = {{SchemeKind::Fd, 8}, {SchemeKind::Hd, 0}, {SchemeKind::HdPerSymbol, 0}};
    const auto res = run_sweep(spec, {1});
    REQUIRE(res.rows.size() == 3);

    const auto p = point_params(spec, 30.0, spec.schemes[0]);
    auto crng = substream(5, 0, 0, StreamPurpose::Channel);
    const auto ch = draw_channel_set<double>(p, crng);
    auto frng = substream(5, 0, 0, StreamPurpose::Estimation, 0);
    const auto fd = evaluate_fd(ch, p, spec.strategy, CsiMode::Estimated, frng);
    auto hrng = substream(5, 0, 0, StreamPurpose::Estimation, 1);
    const auto hd = evaluate_hd(ch, p, hrng);

    CHECK(res.at(30.0, "FD-N8").mean_rate == fd.rate);
    CHECK(res.at(30.0, "FD-N8").mean_mse == fd.mse);
    CHECK(res.at(30.0, "FD-N8").stderr_rate == 0.0);
    CHECK(res.at(30.0, "HD").mean_rate == hd.rate_effective);
    CHECK(res.at(30.0, "HD-per-symbol").mean_rate == hd.rate);
    CHECK(res.at(30.0, "HD").mean_mse == hd.mse);
    CHECK(res.at(30.0, "HD").n_runs == 1);
}

TEST_CASE("Sweeps do not depend on the worker count")
{
    auto spec = dl_sweep(40);
    spec.values = {0.0, 20.0, 40.0};
    const auto one = to_csv(run_sweep(spec, {1}));
    const auto three = to_csv(run_sweep(spec, {3}));
    const auto seven = to_csv(run_sweep(spec, {7}));
    CHECK(one == three);
    CHECK(one == seven);
}

TEST_CASE("Worker count resolution")
{
    ::unsetenv("FDXSIM_THREADS");
    CHECK(resolve_worker_count(5) == 5);
    CHECK(resolve_worker_count(0) >= 1);
    ::setenv("FDXSIM_THREADS", "2", 1);
    CHECK(resolve_worker_count(5) == 2);
    CHECK(resolve_worker_count(1) == 1);
    ::setenv("FDXSIM_THREADS", "junk", 1);
    CHECK(resolve_worker_count(5) == 5);
    ::unsetenv("FDXSIM_THREADS");
}

TEST_CASE("Standard error shrinks as one over root n")
{
    SweepSpec spec;
    spec.values = {20.0};
    spec.schemes = {{SchemeKind::Fd, 16}, {SchemeKind::Hd, 0}};
    std::vector<double> se_fd, se_hd;
    for (int n : {100, 400, 1600}) {
        spec.n_runs = n;
        const auto res = run_sweep(spec);
        se_fd.push_back(res.at(20.0, "FD-N16").stderr_rate);
        se_hd.push_back(res.at(20.0, "HD").stderr_rate);
    }
    for (std::size_t k = 1; k < 3; ++k) {
        CHECK_THAT(se_fd[k - 1] / se_fd[k], WithinAbs(2.0, 0.5));
        CHECK_THAT(se_hd[k - 1] / se_hd[k], WithinAbs(2.0, 0.5));
    }
}

TEST_CASE("Sixteen taps dominate four taps at every DL power")
{
    const auto res = run_sweep(dl_sweep(1000));
    for (double x : res.spec.values) {
        INFO("DL power " << x);
        CHECK(res.at(x, "FD-N16").mean_rate >= res.at(x, "FD-N4").mean_rate);
    }
}

TEST_CASE("Mean rate is non-decreasing in DL power", "[dl-monotone]")
{
    const auto res = run_sweep(dl_sweep(1000));
    for (const auto& scheme : res.spec.schemes) {
        const auto label = scheme.label();
        for (std::size_t k = 1; k < res.spec.values.size(); ++k) {
            const double lo = res.spec.values[k - 1];
            const double hi = res.spec.values[k];
            INFO(label << " from " << lo << " to " << hi << " dBm");
            CHECK(res.at(hi, label).mean_rate >= res.at(lo, label).mean_rate);
        }
    }
}

TEST_CASE("Sweep validation")
{
    auto spec = dl_sweep(10);
    CHECK_NOTHROW(validate(spec));

    auto bad = spec;
    bad.values = {0.0, 0.0};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.values.clear();
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.n_runs = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.schemes = {{SchemeKind::Fd, 6}};
    CHECK_THROWS_WITH(validate(bad), Catch::Matchers::ContainsSubstring("divisible"));
    bad.strategy = PlacementStrategy::LargestAmplitude;
    CHECK_NOTHROW(validate(bad));
    bad = spec;
    bad.variable = SweepVariable::TapCount;
    bad.values = {4.0, 8.5};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.schemes = {{SchemeKind::Fd, 20}};
    CHECK_THROWS_WITH(validate(bad), Catch::Matchers::ContainsSubstring("tap budget"));
}

TEST_CASE("Sweep variables map onto parameters")
{
    SweepSpec spec;
    spec.variable = SweepVariable::UlPowerDbm;
    auto p = point_params(spec, 12.5, {SchemeKind::Fd, 8});
    CHECK(p.p_u_dbm == 12.5);
    CHECK(p.n_taps == 8);
    spec.variable = SweepVariable::TapCount;
    p = point_params(spec, 12.0, {SchemeKind::Fd, 0});
    CHECK(p.n_taps == 12);
    spec.variable = SweepVariable::DlPowerDbm;
    p = point_params(spec, -5.0, {SchemeKind::Hd, 0});
    CHECK(p.p_b_dbm == -5.0);
    CHECK(p.n_taps == SystemParams{}.n_taps);
}

TEST_CASE("Names and labels")
{
    for (auto v : {SweepVariable::DlPowerDbm, SweepVariable::UlPowerDbm, SweepVariable::TapCount})
        CHECK(parse_variable(to_string(v)) == v);
    for (auto k : {SchemeKind::Fd, SchemeKind::FdIdealCsi, SchemeKind::Hd, SchemeKind::HdPerSymbol})
        CHECK(parse_scheme_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_variable("snr"), ConfigError);
    CHECK_THROWS_AS(parse_scheme_kind("tdd"), ConfigError);
    CHECK(Scheme{SchemeKind::Fd, 4}.label() == "FD-N4");
    CHECK(Scheme{SchemeKind::FdIdealCsi, 16}.label() == "FD-ideal-N16");
    CHECK(Scheme{SchemeKind::Hd, 0}.label() == "HD");
    CHECK(Scheme{SchemeKind::HdPerSymbol, 0}.label() == "HD-per-symbol");
}

TEST_CASE("Mean and standard error")
{
    const auto r = mean_stderr({1.0, 2.0, 3.0, 4.0});
    CHECK(r.mean == 2.5);
    CHECK_THAT(r.std_error, WithinRel(std::sqrt(5.0 / 3.0) / 2.0, 1e-14));
    CHECK(mean_stderr({7.0}).std_error == 0.0);
    CHECK(mean_stderr({}).mean == 0.0);
}
