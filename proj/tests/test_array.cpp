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

#include "squint/array.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace squint;

namespace
{
    ComplexWeightVector wrap(const std::vector<oracle::cplx> &w)
    {
        return ComplexWeightVector{w};
    }
}

TEST_CASE("steering vector matches the element formula")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const ArrayConfig cfg{1 + static_cast<std::size_t>(40 * (u(rng) + 1.0)), 0.3 + 0.4 * (u(rng) + 1.0) / 2, 28e9};
        const double b = 0.4 * u(rng);
        const double theta = 1.5 * u(rng);
        const auto a = steering_vector(cfg, b, theta);
        REQUIRE(a.size() == cfg.n_elements);
        CHECK(a.is_unit_modulus());
        CHECK(a[0] == complex_t(1.0, 0.0));
        for (std::size_t n = 0; n < cfg.n_elements; ++n)
        {
            const auto ref = oracle::steering(n, cfg.element_spacing_fraction, b, theta);
            CHECK(std::abs(a[n] - ref) < 1e-12 * (1.0 + static_cast<double>(n)));
        }
    }
    CHECK_THROWS_AS(steering_vector(ArrayConfig{4, 0.5, 28e9}, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("array gain")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const std::size_t n = 1 + static_cast<std::size_t>(31 * (u(rng) + 1.0));
        const ArrayConfig cfg{n, 0.5, 28e9};
        std::vector<double> phases(n);
        for (auto &p : phases)
            p = oracle::pi * u(rng);
        const auto w = oracle::from_phases(phases);
        const double b = 0.3 * u(rng), theta = 1.5 * u(rng);

        const double g = array_gain(wrap(w), cfg, b, theta);
        CHECK(g == doctest::Approx(oracle::gain(w, 0.5, b, theta)).epsilon(1e-12));
        CHECK(g <= static_cast<double>(n) * (1.0 + 1e-12));
    }

    SUBCASE("matched weights reach N")
    {
        const ArrayConfig cfg{37, 0.5, 28e9};
        CHECK(array_gain(steering_vector(cfg, 0.07, 0.4), cfg, 0.07, 0.4) == doctest::Approx(37.0).epsilon(1e-13));
    }
    SUBCASE("length mismatch")
    {
        const ArrayConfig cfg{8, 0.5, 28e9};
        CHECK_THROWS_AS(array_gain(steering_vector(ArrayConfig{7, 0.5, 28e9}, 0.0, 0.0), cfg, 0.0, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("narrowband closed form")
{
    SUBCASE("no offset gives N")
    {
        for (std::size_t n : {1u, 2u, 17u, 64u, 256u})
            CHECK(narrowband_gain_closed_form(ArrayConfig{n, 0.5, 28e9}, 0.0, 0.9) == static_cast<double>(n));
        CHECK(narrowband_gain_closed_form(ArrayConfig{64, 0.5, 28e9}, 0.2, 0.0) == 64.0);
    }
    SUBCASE("against the direct sum")
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 300; ++i)
        {
            const std::size_t n = 1 + static_cast<std::size_t>(127.0 * (u(rng) + 1.0) / 2.0);
            const double b = 0.25 * u(rng), theta = deg_to_rad(89.0 * u(rng));
            const double g = narrowband_gain_closed_form(ArrayConfig{n, 0.5, 28e9}, b, theta);
            CHECK(std::abs(g - oracle::nbbg_gain(n, b, theta)) <= 1e-9 * static_cast<double>(n));
        }
    }
    SUBCASE("symmetric in b and decreasing inside the main lobe")
    {
        const ArrayConfig cfg{64, 0.5, 28e9};
        const double theta = deg_to_rad(60.0);
        double prev = 64.0;
        for (int k = 1; k <= 20; ++k)
        {
            const double b = 0.001 * k; // N |Delta| stays below 1
            const double g = narrowband_gain_closed_form(cfg, b, theta);
            CHECK(g == doctest::Approx(narrowband_gain_closed_form(cfg, -b, theta)).epsilon(1e-14));
            CHECK(g < prev);
            prev = g;
        }
    }
    SUBCASE("half-wavelength only")
    {
        CHECK_THROWS_AS(narrowband_gain_closed_form(ArrayConfig{8, 0.4, 28e9}, 0.1, 0.3), std::invalid_argument);
    }
}

TEST_CASE("squint angle")
{
    const double theta0 = deg_to_rad(60.0);
    CHECK(squint_angle(theta0, 28e9, 28e9).angle_rad == doctest::Approx(theta0).epsilon(1e-15));
    CHECK(squint_angle(0.0, 28e9, 40e9).angle_rad == 0.0);
    CHECK(squint_angle(theta0, 28e9, 32e9).angle_rad < theta0);
    CHECK(squint_angle(theta0, 28e9, 24e9).angle_rad > theta0);
    CHECK(squint_angle(-theta0, 28e9, 24e9).angle_rad < -theta0);

    const auto ev = squint_angle(deg_to_rad(80.0), 28e9, 20e9);
    CHECK(ev.evanescent);
    CHECK(ev.angle_rad == doctest::Approx(oracle::pi / 2));
    CHECK_FALSE(squint_angle(theta0, 28e9, 25e9).evanescent);
    CHECK_THROWS_AS(squint_angle(theta0, 28e9, 0.0), std::invalid_argument);

    SUBCASE("MRT main lobe sits at the squint angle")
    {
        const std::size_t n = 128;
        const auto w = oracle::mrt(n, 0.5, theta0);
        for (double b : {-0.1, -0.05, 0.03, 0.1})
        {
            const double peak = oracle::argmax_angle(w, 0.5, b, deg_to_rad(30.0), deg_to_rad(89.0), 200001);
            const double predicted = squint_angle(theta0, 28e9, 28e9 * (1.0 + b)).angle_rad;
            CHECK(peak == doctest::Approx(predicted).epsilon(1e-4));
        }
    }
    SUBCASE("range spans the band edges")
    {
        const CarrierGrid grid{16, 0.2 * 28e9};
        const auto r = squint_range(theta0, grid, 28e9);
        CHECK(r.min_rad == doctest::Approx(std::asin(std::sin(theta0) / 1.1)));
        CHECK(r.max_rad == doctest::Approx(std::asin(std::sin(theta0) / 0.9)));
        const auto none = squint_range(theta0, CarrierGrid{16, 0.0}, 28e9);
        CHECK(none.min_rad == doctest::Approx(theta0));
        CHECK(none.max_rad == doctest::Approx(theta0));
    }
}
