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

#ifndef SQUINT_COST_HPP
#define SQUINT_COST_HPP

#include "squint/core.hpp"
#include "squint/perf.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace squint
{
    // Parametric hardware cost in arbitrary units.
    //   ps(bf)  = ps_base  (1 + ps_bandwidth_gain bf^p)
    //   ttd(bf) = ttd_base (1 + ttd_bandwidth_slope bf)
    // The defaults give three ordering regions in (0, 1).
    struct CostModel
    {
        double ps_base = 1.0;
        double ps_bandwidth_gain = 100.0;  // kappa_ps
        double ps_bandwidth_exponent = 2.0; // p
        double ttd_base = 8.0;
        double ttd_bandwidth_slope = 0.5;   // kappa_ttd
        double rf_chain_cost = 20.0;
        double fixed_cost = 0.0;

        double ps_unit_cost(double bf) const;
        double ttd_unit_cost(double bf) const;
    };

    void validate(const CostModel &model);

    enum class CostArchitecture
    {
        NonTTD,
        SparseTTD,
        FullTTD
    };

    inline constexpr CostArchitecture all_cost_architectures[] = {CostArchitecture::NonTTD, CostArchitecture::SparseTTD,
                                                                  CostArchitecture::FullTTD};

    std::string_view to_string(CostArchitecture arch);

    // Hardware counts: Non-TTD has N PSs, Full-TTD N TTDs, Sparse-TTD N PSs and K TTDs.
    struct HardwareCounts
    {
        std::size_t n_ps = 0;
        std::size_t n_ttd = 0;
        std::size_t n_rf = 0;
    };

    HardwareCounts hardware_counts(CostArchitecture arch, std::size_t n_elements, std::size_t n_rf, std::size_t n_ttd_sparse);

    struct CostBreakdown
    {
        CostArchitecture architecture = CostArchitecture::NonTTD;
        double ps = 0.0;
        double ttd = 0.0;
        double rf = 0.0;
        double fixed = 0.0;
        double total = 0.0; // ps + ttd + rf + fixed
    };

    // In Sparse-TTD the K delay lines take out the bulk delay between subarrays, so each PS only
    // has to cover the residual band: its unit cost is evaluated at (1 - K/N) bf.
    CostBreakdown architecture_cost(CostArchitecture arch, const ArrayConfig &cfg, std::size_t n_rf,
                                    std::size_t n_ttd_sparse, const CostModel &model, double bf);

    struct CrossoverThresholds
    {
        double th1 = 0.0; // end of the Non-TTD < Sparse < Full region
        double th2 = 0.0; // start of the Full < Sparse < Non-TTD region
        bool degenerate = false; // n_ttd_sparse == 0: Sparse coincides with Non-TTD, th1 == th2
    };

    // Throws ComputeError("no crossover in range ...") if the cost order does not go from
    // Non < Sparse < Full near bf = 0 to Full < Sparse < Non at bf_max.
    CrossoverThresholds crossover_thresholds(const ArrayConfig &cfg, std::size_t n_rf, std::size_t n_ttd_sparse,
                                             const CostModel &model, double bf_max = 1.0);

    // Architectures the advisor chooses between.
    enum class Candidate
    {
        NonTTD_NBBG,
        NonTTD_WBBG,
        SparseTTD_NBBG,
        FullTTD_NBBG
    };

    inline constexpr Candidate all_candidates[] = {Candidate::NonTTD_NBBG, Candidate::NonTTD_WBBG,
                                                   Candidate::SparseTTD_NBBG, Candidate::FullTTD_NBBG};

    std::string_view to_string(Candidate c);
    CostArchitecture hardware_of(Candidate c);

    struct CandidateScore
    {
        Candidate candidate = Candidate::NonTTD_NBBG;
        double sum_se = 0.0;          // Sparse-TTD: midpoint of its bounds
        double normalized_se = 0.0;   // sum_se / R_FN
        double cost = 0.0;
        double normalized_cost = 0.0; // cost / max cost
        double score = 0.0;           // perf_weight normalized_se - cost_weight normalized_cost
    };

    struct Recommendation
    {
        Candidate recommended = Candidate::FullTTD_NBBG;
        double fractional_bandwidth = 0.0;
        double perf_weight = 0.0;
        double cost_weight = 0.0;
        std::vector<CandidateScore> scores; // in all_candidates order
        std::optional<CrossoverThresholds> thresholds;
    };

    // perf_results must hold FullTTD_NBBG, NonTTD_NBBG, NonTTD_WBBG, SparseTTD_lower and
    // SparseTTD_upper; costs must hold all three hardware architectures. Weights in [0, 1]
    // summing to 1. Ties go to the cheaper candidate, then to all_candidates order.
    Recommendation advise(double fractional_bandwidth, double perf_weight, double cost_weight,
                          std::span<const PerformanceResult> perf_results, std::span<const CostBreakdown> costs,
                          std::optional<CrossoverThresholds> thresholds = {});

    struct AdvisorSettings
    {
        CostModel model;
        std::size_t n_rf = 4;
        std::optional<std::size_t> n_ttd_sparse; // default N / 8
        WbbgOptions wbbg;

        std::size_t sparse_ttd_count(const ArrayConfig &cfg) const;
    };

    // Runs the performance model and the cost model for the scenario's bf, then advise().
    // Thresholds are attached when they exist for the model.
    Recommendation advise_scenario(const Scenario &s, double perf_weight, double cost_weight,
                                   const AdvisorSettings &settings = {});

    void write_recommendation_report(std::ostream &out, const Recommendation &rec);
    std::string recommendation_json(const Recommendation &rec);

    struct CostSweepRow
    {
        double bf = 0.0;
        CostBreakdown cost;
    };

    std::vector<CostSweepRow> sweep_cost(const ArrayConfig &cfg, std::size_t n_rf, std::size_t n_ttd_sparse,
                                         const CostModel &model, std::span<const double> bf_grid);

    // bf, architecture, total_cost, ps_cost, ttd_cost, rf_cost
    void write_cost_csv(std::ostream &out, std::span<const CostSweepRow> rows);
    std::vector<CostSweepRow> read_cost_csv(std::istream &in);
}

#endif
