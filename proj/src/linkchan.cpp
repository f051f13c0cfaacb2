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

#include "squint/linkchan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace squint
{
    namespace detail
    {
        extern const std::string_view bundled_atmosphere_table;
        extern const std::string_view bundled_device_catalog;
    }

    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(first, last - first + 1));
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> fields;
            std::string field;
            std::istringstream ss(line);
            while (std::getline(ss, field, sep))
                fields.push_back(trim(field));
            if (!line.empty() && line.back() == sep)
                fields.emplace_back();
            return fields;
        }

        bool parse_number(const std::string &text, double &value)
        {
            const char *first = text.data();
            const char *last = first + text.size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            return ec == std::errc() && ptr == last && std::isfinite(value);
        }

        bool is_na(const std::string &text) { return text == "NA" || text == "N/A" || text.empty(); }

        constexpr const char *catalog_columns[] = {
            "name", "kind", "resolution_bits", "freq_min_ghz", "freq_max_ghz", "delay_range_ps",
            "max_phase_error_deg", "max_delay_error_ps", "loss_min_db", "loss_max_db"};
        constexpr std::size_t n_catalog_columns = std::size(catalog_columns);
    }

    // ---- Device catalog ---------------------------------------------------

    void validate(const DeviceSpec &device)
    {
        if (!(device.freq_min_hz < device.freq_max_hz))
            throw ConfigError("device '" + device.name + "': frequency range min must be < max");
        if (!(device.loss_min_db <= device.loss_max_db))
            throw ConfigError("device '" + device.name + "': insertion loss min must be <= max");
        if (device.resolution_bits && *device.resolution_bits < 1)
            throw ConfigError("device '" + device.name + "': resolution must be >= 1 bit");
    }

    std::vector<DeviceSpec> load_device_catalog(std::istream &source)
    {
        std::vector<DeviceSpec> devices;
        bool have_header = false;
        std::string line;
        std::size_t line_no = 0;

        while (std::getline(source, line))
        {
            ++line_no;
            const std::string content = trim(line);
            if (content.empty() || content.front() == '#')
                continue;

            const auto fields = split(content, ',');
            const auto fail = [&](const std::string &what) {
                throw ConfigError("device catalog line " + std::to_string(line_no) + ": " + what);
            };
            if (fields.size() != n_catalog_columns)
                fail("expected " + std::to_string(n_catalog_columns) + " fields, got " + std::to_string(fields.size()));

            if (!have_header)
            {
                for (std::size_t i = 0; i < n_catalog_columns; ++i)
                    if (fields[i] != catalog_columns[i])
                        fail("header column " + std::to_string(i + 1) + " must be '" + catalog_columns[i] + "'");
                have_header = true;
                continue;
            }

            DeviceSpec d;
            d.name = fields[0];
            if (d.name.empty())
                fail("empty device name");

            if (fields[1] == "PS")
                d.kind = DeviceKind::phase_shifter;
            else if (fields[1] == "TTD")
                d.kind = DeviceKind::true_time_delay;
            else
                fail("kind must be PS or TTD, got '" + fields[1] + "'");

            if (fields[2] != "continuous")
            {
                int bits = 0;
                const auto &t = fields[2];
                const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), bits);
                if (ec != std::errc() || ptr != t.data() + t.size())
                    fail("resolution_bits must be an integer or 'continuous'");
                d.resolution_bits = bits;
            }

            const auto required = [&](std::size_t i, double scale) {
                double v = 0.0;
                if (!parse_number(fields[i], v))
                    fail(std::string(catalog_columns[i]) + ": expected a number, got '" + fields[i] + "'");
                return v * scale;
            };
            const auto optional = [&](std::size_t i, double scale) -> std::optional<double> {
                if (is_na(fields[i]))
                    return std::nullopt;
                return required(i, scale);
            };

            d.freq_min_hz = required(3, 1e9);
            d.freq_max_hz = required(4, 1e9);
            d.delay_range_s = optional(5, 1e-12);
            d.max_phase_error_deg = optional(6, 1.0);
            d.max_delay_error_s = optional(7, 1e-12);
            d.loss_min_db = required(8, 1.0);
            d.loss_max_db = required(9, 1.0);

            validate(d);
            devices.push_back(std::move(d));
        }
        return devices;
    }

    const std::vector<DeviceSpec> &bundled_device_catalog()
    {
        static const std::vector<DeviceSpec> catalog = [] {
            std::istringstream in{std::string(detail::bundled_device_catalog)};
            return load_device_catalog(in);
        }();
        return catalog;
    }

    const DeviceSpec &find_device(const std::vector<DeviceSpec> &catalog, std::string_view name)
    {
        const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const DeviceSpec &d) { return d.name == name; });
        if (it == catalog.end())
            throw ConfigError("unknown device '" + std::string(name) + "'");
        return *it;
    }

    // ---- Impairments ------------------------------------------------------

    std::string_view to_string(ImpairmentKind kind)
    {
        switch (kind)
        {
        case ImpairmentKind::ideal:
            return "ideal";
        case ImpairmentKind::linear_db:
            return "linear_db";
        case ImpairmentKind::linear_amplitude:
            return "linear_amplitude";
        case ImpairmentKind::device:
            return "device";
        }
        return "?";
    }

    ImpairmentKind impairment_kind_from_string(std::string_view text)
    {
        for (auto k : {ImpairmentKind::ideal, ImpairmentKind::linear_db, ImpairmentKind::linear_amplitude,
                       ImpairmentKind::device})
            if (to_string(k) == text)
                return k;
        throw ConfigError("impairment.kind must be ideal, linear_db, linear_amplitude or device; got '" +
                          std::string(text) + "'");
    }

    double ImpairmentModel::effective_edge_loss_db() const
    {
        switch (kind)
        {
        case ImpairmentKind::ideal:
            return 0.0;
        case ImpairmentKind::device:
            return device ? device->loss_max_db - device->loss_min_db : 0.0;
        default:
            return edge_loss_db;
        }
    }

    void validate(const ImpairmentModel &model)
    {
        if (model.kind == ImpairmentKind::device)
        {
            if (!model.device)
                throw ConfigError("impairment.kind = device requires a device");
            validate(*model.device);
        }
        if (!(model.edge_loss_db >= 0.0) || !std::isfinite(model.edge_loss_db))
            throw ConfigError("impairment.edge_loss_db must be nonnegative and finite");
    }

    double impairment_factor(const ImpairmentModel &model, double b, double b_edge)
    {
        if (b_edge < 0.0)
            throw std::invalid_argument("impairment_factor: negative band edge");
        if (model.kind == ImpairmentKind::ideal || b_edge == 0.0)
            return 1.0;

        const double x = std::abs(b) / b_edge;
        if (x > 1.0 + 1e-12)
            throw std::invalid_argument("impairment_factor: |b| = " + format_double(std::abs(b)) +
                                        " exceeds the band edge " + format_double(b_edge));
        const double ramp = std::min(x, 1.0);
        const double edge_db = model.effective_edge_loss_db();

        if (model.kind == ImpairmentKind::linear_amplitude)
            return 1.0 - (1.0 - std::pow(10.0, -edge_db / 10.0)) * ramp;
        return std::pow(10.0, -(edge_db * ramp) / 10.0);
    }

    // ---- Atmosphere -------------------------------------------------------

    AttenuationTable AttenuationTable::parse(std::istream &in)
    {
        AttenuationTable table;
        Atmosphere atm;
        int atm_fields = 0;

        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            std::string content = trim(line);
            if (content.empty())
                continue;
            if (content.front() == '#')
            {
                const auto eq = content.find('=');
                if (eq == std::string::npos)
                    continue;
                const std::string key = trim(std::string_view(content).substr(1, eq - 1));
                double value = 0.0;
                if (!parse_number(trim(std::string_view(content).substr(eq + 1)), value))
                    continue;
                if (key == "temperature_c")
                    atm.temperature_c = value, ++atm_fields;
                else if (key == "pressure_pa")
                    atm.pressure_pa = value, ++atm_fields;
                else if (key == "water_vapor_g_m3")
                    atm.water_vapor_g_m3 = value, ++atm_fields;
                continue;
            }

            std::istringstream ss(content);
            std::string f_text, a_text, extra;
            ss >> f_text >> a_text;
            double f = 0.0, a = 0.0;
            if (!parse_number(f_text, f) || !parse_number(a_text, a) || (ss >> extra))
                throw ConfigError("attenuation table line " + std::to_string(line_no) + ": expected 'frequency_GHz dB_per_km'");
            if (a < 0.0)
                throw ConfigError("attenuation table line " + std::to_string(line_no) + ": negative attenuation");
            if (!table.freq_ghz_.empty() && !(f > table.freq_ghz_.back()))
                throw ConfigError("attenuation table line " + std::to_string(line_no) + ": frequency not strictly increasing");
            table.freq_ghz_.push_back(f);
            table.alpha_.push_back(a);
        }

        if (table.freq_ghz_.size() < 2)
            throw ConfigError("attenuation table needs at least two rows");
        if (atm_fields == 3)
            table.atmosphere_ = atm;
        return table;
    }

    const AttenuationTable &AttenuationTable::bundled()
    {
        static const AttenuationTable table = [] {
            std::istringstream in{std::string(detail::bundled_atmosphere_table)};
            return parse(in);
        }();
        return table;
    }

    double AttenuationTable::at_ghz(double f_ghz) const
    {
        if (!(f_ghz >= freq_ghz_.front() && f_ghz <= freq_ghz_.back()))
            throw ComputeError("frequency " + format_double(f_ghz) + " GHz outside the attenuation table range [" +
                               format_double(freq_ghz_.front()) + ", " + format_double(freq_ghz_.back()) + "] GHz");

        // First node strictly above f; the segment is [i-1, i].
        const auto it = std::upper_bound(freq_ghz_.begin(), freq_ghz_.end(), f_ghz);
        if (it == freq_ghz_.end())
            return alpha_.back();
        const std::size_t i = static_cast<std::size_t>(it - freq_ghz_.begin());
        const double f0 = freq_ghz_[i - 1], f1 = freq_ghz_[i];
        if (f_ghz == f0)
            return alpha_[i - 1];
        return alpha_[i - 1] + (alpha_[i] - alpha_[i - 1]) * (f_ghz - f0) / (f1 - f0);
    }

    void validate(const LinkModel &link)
    {
        if (!std::isfinite(link.snr0_db))
            throw ConfigError("link.snr0_db must be finite");
        if (!(link.pressure_pa > 0.0) || !(link.water_vapor_g_m3 >= 0.0) || !(link.temperature_c > -273.15))
            throw ConfigError("link atmosphere parameters out of physical range");
    }

    double atmospheric_specific_attenuation(double f_hz, const LinkModel &link)
    {
        const auto &table = link.attenuation_table();
        if (const auto &atm = table.atmosphere())
        {
            const auto differs = [](double a, double b) { return std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b)); };
            if (differs(link.temperature_c, atm->temperature_c) || differs(link.pressure_pa, atm->pressure_pa) ||
                differs(link.water_vapor_g_m3, atm->water_vapor_g_m3))
                throw ConfigError("link atmosphere (T = " + format_double(link.temperature_c) + " C, P = " +
                                  format_double(link.pressure_pa) + " Pa, rho = " + format_double(link.water_vapor_g_m3) +
                                  " g/m^3) does not match the attenuation table (T = " + format_double(atm->temperature_c) +
                                  " C, P = " + format_double(atm->pressure_pa) + " Pa, rho = " +
                                  format_double(atm->water_vapor_g_m3) + " g/m^3)");
        }
        return table.at_ghz(f_hz * 1e-9);
    }

    std::vector<double> carrier_snr(const LinkModel &link, const ArrayConfig &array, const CarrierGrid &grid,
                                    const SteeringTarget &target)
    {
        const double snr0 = std::pow(10.0, link.snr0_db / 10.0);
        const auto offsets = carrier_offsets(grid, array.center_frequency_hz);
        std::vector<double> snr(offsets.size(), snr0);
        if (!link.atmosphere_enabled || target.link_distance_m == 0.0)
            return snr;

        const double f0 = array.center_frequency_hz;
        const double d_km = target.link_distance_m / 1000.0;
        const double alpha0 = atmospheric_specific_attenuation(f0, link);
        for (std::size_t m = 0; m < offsets.size(); ++m)
        {
            if (offsets[m] == 0.0)
                continue;
            const double alpha = atmospheric_specific_attenuation(f0 * (1.0 + offsets[m]), link);
            snr[m] = snr0 * std::pow(10.0, -(alpha - alpha0) * d_km / 10.0);
        }
        return snr;
    }
}
