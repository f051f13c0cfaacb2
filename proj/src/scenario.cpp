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

#include "squint/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace squint
{
    Scenario Scenario::with_fractional_bandwidth(double bf) const
    {
        Scenario s = *this;
        s.grid.total_bandwidth_hz = bf * array.center_frequency_hz;
        return s;
    }

    Scenario validate_scenario(const Scenario &s)
    {
        validate(s.array);
        validate(s.grid, s.array.center_frequency_hz);
        validate(s.target);
        validate(s.impairment);
        validate(s.link);
        if (!(s.hybrid_efficiency > 0.0 && s.hybrid_efficiency <= 1.0))
            throw ConfigError("hybrid_efficiency must lie in (0, 1]");

        if (s.link.atmosphere_enabled && s.target.link_distance_m > 0.0)
        {
            // Surface table-range and atmosphere mismatches as configuration errors up front.
            const double f0 = s.array.center_frequency_hz;
            const double edge = s.edge_offset();
            const auto &table = s.link.attenuation_table();
            for (double f : {f0 * (1.0 - edge), f0 * (1.0 + edge)})
                if (f * 1e-9 < table.min_ghz() || f * 1e-9 > table.max_ghz())
                    throw ConfigError("carrier at " + format_double(f * 1e-9) +
                                      " GHz outside the attenuation table range");
            (void)atmospheric_specific_attenuation(f0, s.link);
        }
        return s;
    }

    Scenario scenario_from_config(const KeyValueConfig &config)
    {
        Scenario s;

        if (auto n = config.get_int("array.n_elements"))
        {
            if (*n < 1)
                throw ConfigError("array.n_elements must be >= 1");
            s.array.n_elements = static_cast<std::size_t>(*n);
        }
        if (auto v = config.get_double("array.f0_hz"))
            s.array.center_frequency_hz = *v;
        if (auto v = config.get_double("array.spacing_fraction"))
            s.array.element_spacing_fraction = *v;

        if (auto m = config.get_int("grid.half_count"))
        {
            if (*m < 0)
                throw ConfigError("grid.half_count must be >= 0");
            s.grid.half_count = static_cast<std::size_t>(*m);
        }
        if (auto v = config.get_double("grid.bandwidth_hz"))
            s.grid.total_bandwidth_hz = *v;

        if (auto v = config.get_double("target.angle_deg"))
            s.target.angle_rad = deg_to_rad(*v);
        if (auto v = config.get_double("target.distance_m"))
            s.target.link_distance_m = *v;

        if (auto kind = config.get_string("impairment.kind"))
            s.impairment.kind = impairment_kind_from_string(*kind);
        if (auto v = config.get_double("impairment.edge_loss_db"))
            s.impairment.edge_loss_db = *v;
        const auto catalog_path = config.get_string("impairment.catalog");
        if (auto name = config.get_string("impairment.device"))
        {
            if (catalog_path)
            {
                std::ifstream in(*catalog_path);
                if (!in)
                    throw ConfigError("cannot open device catalog '" + *catalog_path + "'");
                s.impairment.device = find_device(load_device_catalog(in), *name);
            }
            else
            {
                s.impairment.device = find_device(bundled_device_catalog(), *name);
            }
        }

        if (auto v = config.get_double("link.snr0_db"))
            s.link.snr0_db = *v;
        if (auto v = config.get_bool("link.atmosphere"))
            s.link.atmosphere_enabled = *v;
        if (auto v = config.get_double("link.temperature_c"))
            s.link.temperature_c = *v;
        if (auto v = config.get_double("link.pressure_pa"))
            s.link.pressure_pa = *v;
        if (auto v = config.get_double("link.water_vapor_g_m3"))
            s.link.water_vapor_g_m3 = *v;
        if (auto path = config.get_string("link.atmosphere_table"))
        {
            std::ifstream in(*path);
            if (!in)
                throw ConfigError("cannot open attenuation table '" + *path + "'");
            s.link.table = std::make_shared<const AttenuationTable>(AttenuationTable::parse(in));
        }

        if (auto v = config.get_double("hybrid_efficiency"))
            s.hybrid_efficiency = *v;
        return s;
    }

    std::string to_config_text(const Scenario &s)
    {
        // Angles are stored in degrees on disk; write the degree value that maps back to the
        // same radian double when one exists so re-parsing is bit-identical.
        double angle_deg = rad_to_deg(s.target.angle_rad);
        if (deg_to_rad(angle_deg) != s.target.angle_rad)
        {
            for (double candidate : {std::nextafter(angle_deg, -1e300), std::nextafter(angle_deg, 1e300)})
                if (deg_to_rad(candidate) == s.target.angle_rad)
                    angle_deg = candidate;
        }

        std::ostringstream out;
        out << "array.n_elements = " << s.array.n_elements << "\n"
            << "array.f0_hz = " << format_double(s.array.center_frequency_hz) << "\n"
            << "array.spacing_fraction = " << format_double(s.array.element_spacing_fraction) << "\n"
            << "grid.half_count = " << s.grid.half_count << "\n"
            << "grid.bandwidth_hz = " << format_double(s.grid.total_bandwidth_hz) << "\n"
            << "target.angle_deg = " << format_double(angle_deg) << "\n"
            << "target.distance_m = " << format_double(s.target.link_distance_m) << "\n"
            << "impairment.kind = " << to_string(s.impairment.kind) << "\n"
            << "impairment.edge_loss_db = " << format_double(s.impairment.edge_loss_db) << "\n";
        if (s.impairment.device)
            out << "impairment.device = " << s.impairment.device->name << "\n";
        out << "link.snr0_db = " << format_double(s.link.snr0_db) << "\n"
            << "link.atmosphere = " << (s.link.atmosphere_enabled ? "on" : "off") << "\n"
            << "link.temperature_c = " << format_double(s.link.temperature_c) << "\n"
            << "link.pressure_pa = " << format_double(s.link.pressure_pa) << "\n"
            << "link.water_vapor_g_m3 = " << format_double(s.link.water_vapor_g_m3) << "\n"
            << "hybrid_efficiency = " << format_double(s.hybrid_efficiency) << "\n";
        return out.str();
    }

    Scenario mmwave_reference_scenario(double fractional_bandwidth)
    {
        Scenario s;
        s.array = {64, 0.5, 28e9};
        s.grid = {16, fractional_bandwidth * 28e9};
        s.target = {deg_to_rad(60.0), 100.0};
        s.impairment = {ImpairmentKind::linear_db, 6.0, std::nullopt};
        s.link.snr0_db = 0.0;
        s.link.atmosphere_enabled = false;
        return s;
    }

    Scenario subthz_reference_scenario(double fractional_bandwidth)
    {
        Scenario s = mmwave_reference_scenario(fractional_bandwidth);
        s.array = {256, 0.5, 140e9};
        s.grid = {16, fractional_bandwidth * 140e9};
        s.link.atmosphere_enabled = true;
        return s;
    }
}
