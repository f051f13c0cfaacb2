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

#ifndef SQUINT_PERF_HPP
#define SQUINT_PERF_HPP

#include "squint/beamform.hpp"
#include "squint/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace squint
{
    enum class Architecture
    {
        FullTTD_NBBG,
        NonTTD_NBBG,
        NonTTD_WBBG,
        SparseTTD_lower,
        SparseTTD_upper
    };

    inline constexpr Architecture all_architectures[] = {Architecture::FullTTD_NBBG, Architecture::NonTTD_NBBG,
                                                         Architecture::NonTTD_WBBG, Architecture::SparseTTD_lower,
                                                         Architecture::SparseTTD_upper};

    std::string_view to_string(Architecture arch);
    Architecture architecture_from_string(std::string_view text);

    // Spectral efficiencies are in bits/s/Hz (log base 2).
    struct PerformanceResult
    {
        Architecture architecture = Architecture::FullTTD_NBBG;
        std::vector<double> per_carrier_snr; // effective SNR inside the log: gamma_m G_m E_m eta
        std::vector<double> per_carrier_se;
        double sum_se = 0.0;
        double gap_vs_full_ttd = 0.0;
        double normalized_gap = 0.0; // gap / R_FN, clamped to [0, 1]
    };

    // Per-carrier inputs shared by every architecture of one scenario.
    struct CarrierBudget
    {
        std::vector<double> offsets;    // b_m
        std::vector<double> snr;        // gamma_m
        std::vector<double> efficiency; // E(b_m)
        double full_ttd_sum_se = 0.0;   // R_FN
    };

    CarrierBudget carrier_budget(const Scenario &s);

    // R_FN = sum_m log2(1 + gamma_m N eta)
    PerformanceResult sum_se_full_ttd(const Scenario &s);
    // R_NN = sum_m log2(1 + gamma_m G_NB(b_m) E(b_m) eta)
    PerformanceResult sum_se_nbbg(const Scenario &s);
    // R_NW, with the per-carrier gains of a max-min design for this scenario
    PerformanceResult sum_se_wbbg(const Scenario &s, const WbbgSolution &solution);
    // sum_m log2(1 + gamma_m N E(b_m)): a TTD cascaded with an impaired PS on every element
    PerformanceResult sum_se_sparse_upper(const Scenario &s);

    struct GapResult
    {
        double gap = 0.0;            // ref.sum_se - a.sum_se
        double normalized_gap = 0.0; // gap / ref.sum_se, clamped to [0, 1]
        double log_ratio_gap = 0.0;  // sum_m log2((1 + ref_m) / (1 + a_m))
    };

    GapResult performance_gap(const PerformanceResult &a, const PerformanceResult &ref);

    struct SweepOptions
    {
        WbbgOptions wbbg;
        unsigned workers = 0; // 0: SQUINT_WORKERS env var, else hardware concurrency
    };

    struct SweepRow
    {
        double bf = 0.0;
        Architecture architecture = Architecture::FullTTD_NBBG;
        double sum_se = 0.0;
        double gap = 0.0;
        double normalized_gap = 0.0;
        std::optional<double> wbbg_min_gain; // WBBG rows only
        std::uint64_t seed = 0;
    };

    // One row per (bf, architecture), ordered by bf then architecture. Every bf point runs its
    // own max-min design with the same seed, so rows do not depend on evaluation order.
    std::vector<SweepRow> sweep_fractional_bandwidth(const Scenario &base, std::span<const double> bf_grid,
                                                     const SweepOptions &opts = {});

    // bf, architecture, sum_se_bps_hz, gap_bps_hz, normalized_gap, wbbg_min_gain, seed
    void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);
    std::vector<SweepRow> read_sweep_csv(std::istream &in);

    // Worker count from an explicit request, the SQUINT_WORKERS variable, or the hardware.
    unsigned resolve_workers(unsigned requested);
}

#endif
