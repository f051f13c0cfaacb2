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

#ifndef SQUINT_BEAMFORM_HPP
#define SQUINT_BEAMFORM_HPP

#include "squint/array.hpp"
#include "squint/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace squint
{
    // Wraps a phase into (-pi, pi].
    double wrap_phase(double phase_rad);

    // Analog weights realized by phase shifters: frequency-flat phases, unit modulus.
    struct PhaseOnlyWeights
    {
        std::vector<double> phases_rad; // canonical range (-pi, pi]

        std::size_t size() const { return phases_rad.size(); }
        ComplexWeightVector realize() const;

        // Phases of w relative to element 0, wrapped. Magnitudes are discarded.
        static PhaseOnlyWeights from_complex(const ComplexWeightVector &w);
    };

    // Per-element true-time delays; realized weights follow the carrier frequency.
    struct DelayWeights
    {
        std::vector<double> delays_s; // 0 <= delay <= max delay

        std::size_t size() const { return delays_s.size(); }
        // exp(-j 2 pi f0 (1 + b) tau_n)
        ComplexWeightVector realize(const ArrayConfig &cfg, double b) const;
    };

    // Center-carrier matched (MRT) phases toward theta_u.
    PhaseOnlyWeights mrt_phases(const ArrayConfig &cfg, double theta_u_rad);

    // Delay across the full aperture at endfire, (N - 1) d / c: the default TTD range.
    double aperture_delay_s(const ArrayConfig &cfg);

    // tau_n = n d sin(theta_u) / c, shifted so that min tau_n = 0. Throws ConfigError if the
    // largest delay exceeds max_delay_s (default: aperture_delay_s).
    DelayWeights full_ttd_delays(const ArrayConfig &cfg, double theta_u_rad, std::optional<double> max_delay_s = {});

    // Gain of fixed phase-only weights toward theta at each carrier offset.
    std::vector<double> per_carrier_gain(const PhaseOnlyWeights &weights, const ArrayConfig &cfg,
                                         std::span<const double> offsets, double theta_rad);

    struct WbbgOptions
    {
        int restarts = 4;          // restart 0 is the MRT warm start, 1 a chirped MRT, the rest random
        int max_iters = 2000;      // gradient iterations per restart, shared across annealing stages
        double tolerance = 1e-10;  // relative objective change that ends an annealing stage
        std::uint64_t seed = 0;
        bool parallel = true;      // run restarts concurrently; the result does not depend on it
    };

    struct WbbgSolution
    {
        PhaseOnlyWeights weights;
        double min_gain = 0.0;
        std::vector<double> per_carrier_gain; // gain at (b_m, theta_u)
        int iterations = 0;                   // summed over restarts
        bool converged = false;               // winning restart met the tolerance in its final stage
        std::uint64_t seed = 0;
        int best_restart = 0;
    };

    // Phase-only weights that maximize the minimum gain over the carriers of the grid, all
    // evaluated at the user's angle. Never worse than MRT.
    WbbgSolution wbbg_optimize(const ArrayConfig &cfg, const CarrierGrid &grid, double theta_u_rad,
                               const WbbgOptions &opts = {});
}

#endif
