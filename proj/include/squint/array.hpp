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

#ifndef SQUINT_ARRAY_HPP
#define SQUINT_ARRAY_HPP

#include "squint/core.hpp"

#include <complex>
#include <vector>

namespace squint
{
    using complex_t = std::complex<double>;

    // One complex weight (or response) per array element.
    struct ComplexWeightVector
    {
        std::vector<complex_t> entries;

        std::size_t size() const { return entries.size(); }
        const complex_t &operator[](std::size_t n) const { return entries[n]; }
        complex_t &operator[](std::size_t n) { return entries[n]; }

        bool is_unit_modulus(double tol = 1e-12) const;
    };

    // ULA response at fractional carrier offset b (f = f0 (1 + b)) toward angle theta.
    // Element n has phase -pi (1 + b) (2 d/lambda0) n sin(theta); element 0 is 1.
    ComplexWeightVector steering_vector(const ArrayConfig &cfg, double b, double theta_rad);

    // |a(b, theta)^H w|. Throws std::invalid_argument on a length mismatch.
    double array_gain(const ComplexWeightVector &w, const ArrayConfig &cfg, double b, double theta_rad);

    // Gain of center-carrier matched weights seen at offset b and the same angle:
    // |sin(N pi D) / sin(pi D)| with D = (b/2) sin(theta_u). Half-wavelength spacing only.
    double narrowband_gain_closed_form(const ArrayConfig &cfg, double b, double theta_u_rad);

    struct SquintAngle
    {
        double angle_rad = 0.0;
        bool evanescent = false; // |(f0/f) sin(theta0)| > 1, angle clamped to +-pi/2
    };

    // Main-lobe direction at frequency f of a beam steered to theta0 at f0:
    // asin((f0/f) sin(theta0)).
    SquintAngle squint_angle(double theta0_rad, double f0_hz, double f_hz);

    struct AngularRange
    {
        double min_rad = 0.0;
        double max_rad = 0.0;
    };

    // Angular spread of the squinted main lobes between the band-edge carriers.
    AngularRange squint_range(double theta_u_rad, const CarrierGrid &grid, double f0_hz);
}

#endif
