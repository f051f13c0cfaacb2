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

#ifndef SQUINT_LINKCHAN_HPP
#define SQUINT_LINKCHAN_HPP

#include "squint/core.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace squint
{
    enum class DeviceKind
    {
        phase_shifter,
        true_time_delay
    };

    // One catalog row: a commercial or lab wideband PS / TTD and its loss/error figures.
    struct DeviceSpec
    {
        std::string name;
        DeviceKind kind = DeviceKind::phase_shifter;
        std::optional<int> resolution_bits;     // nullopt = continuous
        double freq_min_hz = 0.0;
        double freq_max_hz = 0.0;
        std::optional<double> delay_range_s;
        std::optional<double> max_phase_error_deg;
        std::optional<double> max_delay_error_s;
        double loss_min_db = 0.0;
        double loss_max_db = 0.0;
    };

    void validate(const DeviceSpec &device);

    // Reads the catalog format of data/devices.csv. Throws ConfigError with a line number
    // on malformed rows and with the device name on invariant violations.
    std::vector<DeviceSpec> load_device_catalog(std::istream &source);
    const std::vector<DeviceSpec> &bundled_device_catalog();
    const DeviceSpec &find_device(const std::vector<DeviceSpec> &catalog, std::string_view name);

    enum class ImpairmentKind
    {
        ideal,
        linear_db,        // loss ramps linearly in dB from 0 at b = 0 to edge_loss_db at the band edge
        linear_amplitude, // efficiency ramps linearly from 1 to 10^(-edge_loss_db/10)
        device            // linear_db with the device's insertion-loss spread as edge loss
    };

    std::string_view to_string(ImpairmentKind kind);
    ImpairmentKind impairment_kind_from_string(std::string_view text);

    // Frequency-dependent phase-shifter efficiency E(b).
    struct ImpairmentModel
    {
        ImpairmentKind kind = ImpairmentKind::linear_db;
        double edge_loss_db = 6.0;
        std::optional<DeviceSpec> device;

        double effective_edge_loss_db() const;
    };

    void validate(const ImpairmentModel &model);

    // E(b) in (0, 1]. Requires |b| <= b_edge unless b_edge = 0 (then E = 1).
    double impairment_factor(const ImpairmentModel &model, double b, double b_edge);

    // Specific attenuation versus frequency, linearly interpolated between nodes.
    class AttenuationTable
    {
    public:
        struct Atmosphere
        {
            double temperature_c = 15.0;
            double pressure_pa = 101300.0;
            double water_vapor_g_m3 = 7.5;
        };

        // Two columns (GHz, dB/km), strictly increasing frequency. Optional header comments
        // "# temperature_c = ..", "# pressure_pa = ..", "# water_vapor_g_m3 = .." record the atmosphere.
        static AttenuationTable parse(std::istream &in);
        static const AttenuationTable &bundled();

        double at_ghz(double f_ghz) const;
        double min_ghz() const { return freq_ghz_.front(); }
        double max_ghz() const { return freq_ghz_.back(); }
        const std::vector<double> &frequencies_ghz() const { return freq_ghz_; }
        const std::vector<double> &values_db_per_km() const { return alpha_; }
        const std::optional<Atmosphere> &atmosphere() const { return atmosphere_; }

    private:
        std::vector<double> freq_ghz_;
        std::vector<double> alpha_;
        std::optional<Atmosphere> atmosphere_;
    };

    struct LinkModel
    {
        double snr0_db = 0.0; // per-antenna SNR at the center carrier
        bool atmosphere_enabled = false;
        double temperature_c = 15.0;
        double pressure_pa = 101300.0;
        double water_vapor_g_m3 = 7.5;
        std::shared_ptr<const AttenuationTable> table; // null selects the bundled table

        const AttenuationTable &attenuation_table() const { return table ? *table : AttenuationTable::bundled(); }
    };

    void validate(const LinkModel &link);

    // dB/km. Throws ComputeError outside the table range and ConfigError if the link's
    // atmosphere differs from the one the table was generated for.
    double atmospheric_specific_attenuation(double f_hz, const LinkModel &link);

    // Linear per-carrier SNR, tilted relative to the center carrier by atmospheric absorption.
    std::vector<double> carrier_snr(const LinkModel &link, const ArrayConfig &array, const CarrierGrid &grid,
                                    const SteeringTarget &target);
}

#endif
