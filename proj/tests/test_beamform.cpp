// SPDX-License-Identifier: Apache-2.0
//
// squintlab: beam squint analysis for wideband hybrid beamformers
// Copyright (C) 2026 The squintlab authors
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

#include "squint/beamform.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace squint;

TEST_CASE("wrap_phase")
{
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(pi) == doctest::Approx(pi));
    CHECK(wrap_phase(-pi) == doctest::Approx(pi));
    CHECK(wrap_phase(3.0 * pi) == doctest::Approx(pi));
    CHECK(wrap_phase(2.0 * pi + 0.25) == doctest::Approx(0.25));
    CHECK(wrap_phase(-0.5) == doctest::Approx(-0.5));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = u(rng);
        const double w = wrap_phase(x);
        CHECK(w > -pi);
        CHECK(w <= pi);
        CHECK(std::abs(std::remainder(x - w, 2.0 * pi)) < 1e-9);
    }
}

TEST_CASE("phase-only weights")
{
    const ArrayConfig cfg{16, 0.5, 28e9};
    const auto mrt = mrt_phases(cfg, 0.7);
    REQUIRE(mrt.size() == 16);
    CHECK(mrt.phases_rad[0] == 0.0);
    const auto w = mrt.realize();
    CHECK(w.is_unit_modulus());
    const auto ref = oracle::mrt(16, 0.5, 0.7);
    for (std::size_t n = 0; n < 16; ++n)
        CHECK(std::abs(w[n] - ref[n]) < 1e-12);

    SUBCASE("from_complex drops magnitude and references element 0")
    {
        ComplexWeightVector c{{std::polar(2.0, 1.0), std::polar(0.5, 2.5), std::polar(3.0, -2.0)}};
        const auto p = PhaseOnlyWeights::from_complex(c);
        CHECK(p.phases_rad[0] == 0.0);
        CHECK(p.phases_rad[1] == doctest::Approx(1.5));
        CHECK(p.phases_rad[2] == doctest::Approx(wrap_phase(-3.0)));
    }
    SUBCASE("per_carrier_gain agrees with the direct sum")
    {
        const std::vector<double> b = {-0.1, 0.0, 0.05, 0.1};
        const auto g = per_carrier_gain(mrt, cfg, b, 0.7);
        REQUIRE(g.size() == b.size());
        for (std::size_t m = 0; m < b.size(); ++m)
            CHECK(g[m] == doctest::Approx(oracle::gain(ref, 0.5, b[m], 0.7)).epsilon(1e-12));
    }
}

TEST_CASE("full TTD delays")
{
    const ArrayConfig cfg{64, 0.5, 28e9};
    for (double deg : {-60.0, -10.0, 0.0, 30.0, 60.0, 89.0})
    {
        const double theta = deg_to_rad(deg);
        const auto d = full_ttd_delays(cfg, theta);
        REQUIRE(d.size() == 64);
        CHECK(*std::min_element(d.delays_s.begin(), d.delays_s.end()) == 0.0);
        CHECK(*std::max_element(d.delays_s.begin(), d.delays_s.end()) <= aperture_delay_s(cfg) * (1.0 + 1e-12));

        // Squint-free: the same gain N on every carrier.
        const auto b = oracle::offsets(16, 0.3);
        double lo = 1e300, hi = 0.0;
        for (double x : b)
        {
            const auto w = d.realize(cfg, x);
            CHECK(w.is_unit_modulus());
            const double g = oracle::gain(w.entries, 0.5, x, theta);
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        CHECK(hi - lo <= 1e-9 * 64);
        CHECK(lo == doctest::Approx(64.0).epsilon(1e-10));
    }
    CHECK(aperture_delay_s(cfg) == doctest::Approx(63 * cfg.element_spacing_m() / speed_of_light));
    CHECK_THROWS_AS(full_ttd_delays(cfg, deg_to_rad(60.0), 1e-12), ConfigError);
    CHECK_NOTHROW(full_ttd_delays(cfg, deg_to_rad(60.0), aperture_delay_s(cfg) * 0.9));
}

TEST_CASE("max-min design: invariants")
{
    const ArrayConfig cfg{16, 0.5, 28e9};
    const CarrierGrid grid{8, 0.3 * 28e9};
    const double theta = deg_to_rad(50.0);
    const auto sol = wbbg_optimize(cfg, grid, theta);

    REQUIRE(sol.per_carrier_gain.size() == 17);
    CHECK(sol.weights.realize().is_unit_modulus());
    CHECK(sol.min_gain == doctest::Approx(*std::min_element(sol.per_carrier_gain.begin(), sol.per_carrier_gain.end())));
    const auto w = sol.weights.realize().entries;
    const auto b = oracle::offsets(8, 0.3);
    for (std::size_t m = 0; m < b.size(); ++m)
        CHECK(sol.per_carrier_gain[m] == doctest::Approx(oracle::gain(w, 0.5, b[m], theta)).epsilon(1e-10));
    CHECK(sol.min_gain >= oracle::min_gain(oracle::mrt(16, 0.5, theta), 0.5, b, theta));
    CHECK(sol.iterations > 0);
    CHECK(sol.seed == 0);
}

TEST_CASE("max-min design: degenerate inputs")
{
    const ArrayConfig cfg{32, 0.5, 28e9};
    SUBCASE("no bandwidth is plain MRT")
    {
        const auto sol = wbbg_optimize(cfg, CarrierGrid{4, 0.0}, 0.4);
        CHECK(sol.min_gain == doctest::Approx(32.0).epsilon(1e-12));
        CHECK(sol.converged);
    }
    SUBCASE("single element")
    {
        const auto sol = wbbg_optimize(ArrayConfig{1, 0.5, 28e9}, CarrierGrid{4, 5e9}, 0.4);
        CHECK(sol.min_gain == doctest::Approx(1.0));
    }
    SUBCASE("bad options")
    {
        WbbgOptions o;
        o.restarts = 0;
        CHECK_THROWS_AS(wbbg_optimize(cfg, CarrierGrid{4, 5e9}, 0.4, o), std::invalid_argument);
        o.restarts = 2;
        o.max_iters = -1;
        CHECK_THROWS_AS(wbbg_optimize(cfg, CarrierGrid{4, 5e9}, 0.4, o), std::invalid_argument);
    }
}

TEST_CASE("max-min design: reproducible")
{
    const ArrayConfig cfg{24, 0.5, 28e9};
    const CarrierGrid grid{6, 0.25 * 28e9};
    WbbgOptions a;
    a.seed = 42;
    a.restarts = 4;
    WbbgOptions b = a;
    b.parallel = false;
    const auto s1 = wbbg_optimize(cfg, grid, 0.9, a);
    const auto s2 = wbbg_optimize(cfg, grid, 0.9, a);
    const auto s3 = wbbg_optimize(cfg, grid, 0.9, b);
    CHECK(s1.weights.phases_rad == s2.weights.phases_rad);
    CHECK(s1.weights.phases_rad == s3.weights.phases_rad);
    CHECK(s1.min_gain == s3.min_gain);
    CHECK(s1.best_restart == s3.best_restart);
    CHECK(s1.seed == 42);
}

TEST_CASE("max-min design: near the quantized optimum on small arrays")
{
    for (std::size_t m : {1u, 2u})
        for (double deg : {20.0, 45.0, 70.0})
        {
            const ArrayConfig cfg{4, 0.5, 28e9};
            const double theta = deg_to_rad(deg);
            const auto sol = wbbg_optimize(cfg, CarrierGrid{m, 0.2 * 28e9}, theta);
            const double best = oracle::exhaustive_quantized_maxmin(4, 0.5, oracle::offsets(m, 0.2), theta, 16);
            CHECK(sol.min_gain >= 0.95 * best);
        }
}

TEST_CASE("max-min design: never below MRT")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 25; ++i)
    {
        const std::size_t n = 2 + static_cast<std::size_t>(30 * u(rng));
        const std::size_t m = static_cast<std::size_t>(8 * u(rng));
        const double bf = 0.4 * u(rng);
        const double theta = deg_to_rad(-80.0 + 160.0 * u(rng));
        WbbgOptions o;
        o.restarts = 3;
        o.seed = static_cast<std::uint64_t>(i);
        const auto sol = wbbg_optimize(ArrayConfig{n, 0.5, 28e9}, CarrierGrid{m, bf * 28e9}, theta, o);
        const double mrt = oracle::min_gain(oracle::mrt(n, 0.5, theta), 0.5, oracle::offsets(m, bf), theta);
        CHECK(sol.min_gain >= mrt * (1.0 - 1e-12));
    }
}
