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

#include <algorithm>
#include <cmath>

namespace squint
{
    bool ComplexWeightVector::is_unit_modulus(double tol) const
    {
        return std::all_of(entries.begin(), entries.end(), [tol](const complex_t &w) { return std::abs(std::abs(w) - 1.0) <= tol; });
    }

    ComplexWeightVector steering_vector(const ArrayConfig &cfg, double b, double theta_rad)
    {
        if (!(std::abs(b) < 1.0))
            throw std::invalid_argument("steering_vector: |b| must be < 1");

        const double step = -pi * (1.0 + b) * (2.0 * cfg.element_spacing_fraction) * std::sin(theta_rad);
        ComplexWeightVector a;
        a.entries.resize(cfg.n_elements);
        for (std::size_t n = 0; n < cfg.n_elements; ++n)
            a.entries[n] = std::polar(1.0, step * static_cast<double>(n));
        return a;
    }

    double array_gain(const ComplexWeightVector &w, const ArrayConfig &cfg, double b, double theta_rad)
    {
        if (w.size() != cfg.n_elements)
            throw std::invalid_argument("array_gain: weight vector has " + std::to_string(w.size()) +
                                        " entries, array has " + std::to_string(cfg.n_elements));
        const auto a = steering_vector(cfg, b, theta_rad);
        complex_t acc = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n)
            acc += std::conj(a[n]) * w[n];
        return std::abs(acc);
    }

    double narrowband_gain_closed_form(const ArrayConfig &cfg, double b, double theta_u_rad)
    {
        if (cfg.element_spacing_fraction != 0.5)
            throw std::invalid_argument("narrowband_gain_closed_form: only half-wavelength spacing is supported; "
                                        "use array_gain for spacing_fraction = " +
                                        format_double(cfg.element_spacing_fraction));

        const double N = static_cast<double>(cfg.n_elements);
        const double delta = 0.5 * b * std::sin(theta_u_rad);
        if (std::abs(delta) < 1e-12)
            return N;
        return std::abs(std::sin(N * pi * delta) / std::sin(pi * delta));
    }

    SquintAngle squint_angle(double theta0_rad, double f0_hz, double f_hz)
    {
        if (!(f_hz > 0.0) || !(f0_hz > 0.0))
            throw std::invalid_argument("squint_angle: frequencies must be positive");

        const double s = (f0_hz / f_hz) * std::sin(theta0_rad);
        if (std::abs(s) > 1.0)
            return {std::copysign(pi / 2.0, theta0_rad), true};
        return {std::asin(s), false};
    }

    AngularRange squint_range(double theta_u_rad, const CarrierGrid &grid, double f0_hz)
    {
        const double edge = edge_offset(grid, f0_hz);
        const double upper_edge = squint_angle(theta_u_rad, f0_hz, f0_hz * (1.0 + edge)).angle_rad;
        const double lower_edge = squint_angle(theta_u_rad, f0_hz, f0_hz * (1.0 - edge)).angle_rad;
        return {std::min(upper_edge, lower_edge), std::max(upper_edge, lower_edge)};
    }
}
