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

#include <algorithm>
#include <cmath>

namespace squint
{
    double wrap_phase(double phase_rad)
    {
        double p = std::remainder(phase_rad, 2.0 * pi); // [-pi, pi]
        if (p <= -pi)
            p += 2.0 * pi;
        return p;
    }

    ComplexWeightVector PhaseOnlyWeights::realize() const
    {
        ComplexWeightVector w;
        w.entries.reserve(phases_rad.size());
        for (double p : phases_rad)
            w.entries.push_back(std::polar(1.0, p));
        return w;
    }

    PhaseOnlyWeights PhaseOnlyWeights::from_complex(const ComplexWeightVector &w)
    {
        PhaseOnlyWeights out;
        if (w.size() == 0)
            return out;
        const complex_t ref = std::abs(w[0]) > 0.0 ? std::conj(w[0]) / std::abs(w[0]) : complex_t(1.0);
        out.phases_rad.reserve(w.size());
        for (std::size_t n = 0; n < w.size(); ++n)
            out.phases_rad.push_back(n == 0 ? 0.0 : wrap_phase(std::arg(w[n] * ref)));
        return out;
    }

    ComplexWeightVector DelayWeights::realize(const ArrayConfig &cfg, double b) const
    {
        const double omega = 2.0 * pi * cfg.center_frequency_hz * (1.0 + b);
        ComplexWeightVector w;
        w.entries.reserve(delays_s.size());
        for (double tau : delays_s)
            w.entries.push_back(std::polar(1.0, -omega * tau));
        return w;
    }

    PhaseOnlyWeights mrt_phases(const ArrayConfig &cfg, double theta_u_rad)
    {
        const double step = -pi * (2.0 * cfg.element_spacing_fraction) * std::sin(theta_u_rad);
        PhaseOnlyWeights w;
        w.phases_rad.reserve(cfg.n_elements);
        for (std::size_t n = 0; n < cfg.n_elements; ++n)
            w.phases_rad.push_back(wrap_phase(step * static_cast<double>(n)));
        return w;
    }

    double aperture_delay_s(const ArrayConfig &cfg)
    {
        return static_cast<double>(cfg.n_elements - 1) * cfg.element_spacing_m() / speed_of_light;
    }

    DelayWeights full_ttd_delays(const ArrayConfig &cfg, double theta_u_rad, std::optional<double> max_delay_s)
    {
        const double per_element = cfg.element_spacing_m() * std::sin(theta_u_rad) / speed_of_light;
        DelayWeights d;
        d.delays_s.resize(cfg.n_elements);
        for (std::size_t n = 0; n < cfg.n_elements; ++n)
            d.delays_s[n] = static_cast<double>(n) * per_element;

        const double shift = *std::min_element(d.delays_s.begin(), d.delays_s.end());
        for (double &tau : d.delays_s)
            tau -= shift;

        const double needed = *std::max_element(d.delays_s.begin(), d.delays_s.end());
        const double limit = max_delay_s.value_or(aperture_delay_s(cfg));
        if (needed > limit * (1.0 + 1e-12))
            throw ConfigError("full_ttd_delays: steering needs " + format_double(needed * 1e12) +
                              " ps of aperture delay, TTD range is " + format_double(limit * 1e12) + " ps");
        return d;
    }

    std::vector<double> per_carrier_gain(const PhaseOnlyWeights &weights, const ArrayConfig &cfg,
                                         std::span<const double> offsets, double theta_rad)
    {
        const auto w = weights.realize();
        std::vector<double> g;
        g.reserve(offsets.size());
        for (double b : offsets)
            g.push_back(array_gain(w, cfg, b, theta_rad));
        return g;
    }
}
