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

#include "squint/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace squint
{
    void validate(const ArrayConfig &cfg)
    {
        if (cfg.n_elements < 1)
            throw ConfigError("array.n_elements must be >= 1");
        if (!(cfg.center_frequency_hz > 0.0) || !std::isfinite(cfg.center_frequency_hz))
            throw ConfigError("array.f0_hz must be positive and finite");
        if (!(cfg.element_spacing_fraction > 0.0) || !std::isfinite(cfg.element_spacing_fraction))
            throw ConfigError("array.spacing_fraction must be positive and finite");
    }

    void validate(const CarrierGrid &grid, double center_frequency_hz)
    {
        if (!(grid.total_bandwidth_hz >= 0.0) || !std::isfinite(grid.total_bandwidth_hz))
            throw ConfigError("grid.bandwidth_hz must be nonnegative and finite");
        const double b_max = edge_offset(grid, center_frequency_hz);
        if (!(b_max < 1.0))
            throw ConfigError("fractional offset >= 1: B/(2 f0) = " + format_double(b_max) +
                              " would put the lowest carrier at a nonpositive frequency");
    }

    void validate(const SteeringTarget &target)
    {
        if (!(std::abs(target.angle_rad) < pi / 2.0))
            throw ConfigError("target angle must satisfy |angle| < 90 deg");
        if (!(target.link_distance_m >= 0.0) || !std::isfinite(target.link_distance_m))
            throw ConfigError("target.distance_m must be nonnegative and finite");
    }

    double edge_offset(const CarrierGrid &grid, double center_frequency_hz)
    {
        return grid.total_bandwidth_hz / (2.0 * center_frequency_hz);
    }

    std::vector<double> carrier_offsets(const CarrierGrid &grid, double center_frequency_hz)
    {
        const double edge = edge_offset(grid, center_frequency_hz);
        if (grid.half_count == 0)
            return {0.0};

        const auto M = static_cast<long long>(grid.half_count);
        std::vector<double> b;
        b.reserve(2 * grid.half_count + 1);
        for (long long m = -M; m <= M; ++m)
            b.push_back(static_cast<double>(m) / static_cast<double>(M) * edge);
        return b;
    }

    // ---- KeyValueConfig ---------------------------------------------------

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }
    }

    KeyValueConfig KeyValueConfig::parse(std::istream &in)
    {
        KeyValueConfig cfg;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;

            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            if (cfg.values_.count(key))
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");

            cfg.origin_[key] = {line_no, cfg.values_.size()};
            cfg.values_[key] = std::move(value);
        }
        return cfg;
    }

    KeyValueConfig KeyValueConfig::parse_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        try
        {
            return parse(in);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path + ": " + e.what());
        }
    }

    bool KeyValueConfig::contains(const std::string &key) const { return values_.count(key) != 0; }

    void KeyValueConfig::set(const std::string &key, const std::string &value)
    {
        if (!values_.count(key))
            origin_[key] = {0, values_.size()};
        values_[key] = value;
    }

    std::string KeyValueConfig::describe(const std::string &key) const
    {
        const auto it = origin_.find(key);
        if (it == origin_.end() || it->second.line == 0)
            return "'" + key + "'";
        return "'" + key + "' (line " + std::to_string(it->second.line) + ")";
    }

    std::optional<std::string> KeyValueConfig::get_string(const std::string &key) const
    {
        const auto it = values_.find(key);
        if (it == values_.end())
            return std::nullopt;
        used_[key] = true;
        return it->second;
    }

    std::optional<double> KeyValueConfig::get_double(const std::string &key) const
    {
        const auto text = get_string(key);
        if (!text)
            return std::nullopt;
        double value = 0.0;
        const char *first = text->data();
        const char *last = first + text->size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ConfigError(describe(key) + ": expected a number, got '" + *text + "'");
        return value;
    }

    std::optional<std::int64_t> KeyValueConfig::get_int(const std::string &key) const
    {
        const auto text = get_string(key);
        if (!text)
            return std::nullopt;
        std::int64_t value = 0;
        const char *first = text->data();
        const char *last = first + text->size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ConfigError(describe(key) + ": expected an integer, got '" + *text + "'");
        return value;
    }

    std::optional<bool> KeyValueConfig::get_bool(const std::string &key) const
    {
        auto text = get_string(key);
        if (!text)
            return std::nullopt;
        std::string v = *text;
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        if (v == "on" || v == "true" || v == "yes" || v == "1")
            return true;
        if (v == "off" || v == "false" || v == "no" || v == "0")
            return false;
        throw ConfigError(describe(key) + ": expected on/off, got '" + *text + "'");
    }

    std::vector<std::string> KeyValueConfig::unused_keys() const
    {
        std::vector<std::pair<std::size_t, std::string>> unused;
        for (const auto &[key, value] : values_)
            if (!used_.count(key))
                unused.emplace_back(origin_.at(key).order, key);
        std::sort(unused.begin(), unused.end());
        std::vector<std::string> keys;
        for (auto &[order, key] : unused)
            keys.push_back(std::move(key));
        return keys;
    }

    std::string format_double(double value)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        return std::string(buf, ec == std::errc() ? ptr : buf);
    }
}
