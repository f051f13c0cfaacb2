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

#ifndef SQUINT_CORE_HPP
#define SQUINT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace squint
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = std::numbers::pi;

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    // Invalid configuration or scenario. The CLI maps this to exit code 1.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A well-formed request that cannot be computed (no crossover, table range, ...).
    class ComputeError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Uniform linear array geometry.
    struct ArrayConfig
    {
        std::size_t n_elements = 1;           // N
        double element_spacing_fraction = 0.5; // spacing in wavelengths at f0
        double center_frequency_hz = 28e9;     // f0

        double wavelength_m() const { return speed_of_light / center_frequency_hz; }
        double element_spacing_m() const { return element_spacing_fraction * wavelength_m(); }
    };

    // 2M+1 carriers spread uniformly over the bandwidth; the extreme carriers sit on the band edges.
    struct CarrierGrid
    {
        std::size_t half_count = 0;     // M
        double total_bandwidth_hz = 0.0; // B
    };

    struct SteeringTarget
    {
        double angle_rad = 0.0;         // from boresight
        double link_distance_m = 100.0; // only used by the atmospheric model
    };

    void validate(const ArrayConfig &cfg);
    void validate(const CarrierGrid &grid, double center_frequency_hz);
    void validate(const SteeringTarget &target);

    // B / (2 f0): fractional offset of the band-edge carriers.
    double edge_offset(const CarrierGrid &grid, double center_frequency_hz);

    // b_m = (m/M) * B/(2 f0) for m = -M..M, or {0} when M = 0. Exactly antisymmetric.
    std::vector<double> carrier_offsets(const CarrierGrid &grid, double center_frequency_hz);

    // Flat "key = value" configuration text. '#' starts a comment, keys are dotted paths.
    class KeyValueConfig
    {
    public:
        static KeyValueConfig parse(std::istream &in);
        static KeyValueConfig parse_file(const std::string &path);

        bool contains(const std::string &key) const;
        void set(const std::string &key, const std::string &value);

        std::optional<std::string> get_string(const std::string &key) const;
        std::optional<double> get_double(const std::string &key) const;
        std::optional<std::int64_t> get_int(const std::string &key) const;
        std::optional<bool> get_bool(const std::string &key) const; // on/off, true/false, yes/no, 1/0

        // Keys that no get_* call has looked at, in file order.
        std::vector<std::string> unused_keys() const;

        const std::map<std::string, std::string> &entries() const { return values_; }

    private:
        struct Origin
        {
            std::size_t line = 0;
            std::size_t order = 0;
        };
        std::string describe(const std::string &key) const;

        std::map<std::string, std::string> values_;
        std::map<std::string, Origin> origin_;
        mutable std::map<std::string, bool> used_;
    };

    // Shortest decimal text that parses back to the identical double.
    std::string format_double(double value);
}

#endif
