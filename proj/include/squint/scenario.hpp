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

#ifndef SQUINT_SCENARIO_HPP
#define SQUINT_SCENARIO_HPP

#include "squint/core.hpp"
#include "squint/linkchan.hpp"

#include <string>
#include <vector>

namespace squint
{
    // Everything the performance model needs for one operating point.
    struct Scenario
    {
        ArrayConfig array;
        CarrierGrid grid;
        SteeringTarget target;
        ImpairmentModel impairment;
        LinkModel link;
        double hybrid_efficiency = 1.0; // eta in (0, 1]

        std::vector<double> offsets() const { return carrier_offsets(grid, array.center_frequency_hz); }
        double edge_offset() const { return squint::edge_offset(grid, array.center_frequency_hz); }
        double fractional_bandwidth() const { return grid.total_bandwidth_hz / array.center_frequency_hz; }

        // Copy with B = bf * f0, everything else unchanged.
        Scenario with_fractional_bandwidth(double bf) const;
    };

    // Returns the scenario unchanged if every invariant holds; throws ConfigError naming the first violation.
    Scenario validate_scenario(const Scenario &s);

    // Scenario keys: array.*, grid.*, target.*, impairment.*, link.*, hybrid_efficiency.
    // Missing keys take the defaults of the structs above. Not validated.
    Scenario scenario_from_config(const KeyValueConfig &config);

    // Canonical text for the scenario keys; parses back to an identical scenario.
    std::string to_config_text(const Scenario &s);

    // The two setups used throughout the analysis: 28 GHz / 64 elements and 140 GHz / 256 elements
    // with atmospheric absorption. M = 16, 0 dB per-antenna SNR, user at 60 degrees.
    Scenario mmwave_reference_scenario(double fractional_bandwidth = 0.1);
    Scenario subthz_reference_scenario(double fractional_bandwidth = 0.1);
}

#endif
