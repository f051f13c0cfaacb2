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

#include "squint/perf.hpp"

#include "squint/parallel.hpp"
#include "squint/sparse_ttd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace squint
{
    std::string_view to_string(Architecture arch)
    {
        switch (arch)
        {
        case Architecture::FullTTD_NBBG:
            return "FullTTD-NBBG";
        case Architecture::NonTTD_NBBG:
            return "NonTTD-NBBG";
        case Architecture::NonTTD_WBBG:
            return "NonTTD-WBBG";
        case Architecture::SparseTTD_lower:
            return "SparseTTD-lower";
        case Architecture::SparseTTD_upper:
            return "SparseTTD-upper";
        }
        return "?";
    }

    Architecture architecture_from_string(std::string_view text)
    {
        for (auto a : all_architectures)
            if (to_string(a) == text)
                return a;
        throw ConfigError("unknown architecture '" + std::string(text) + "'");
    }

    CarrierBudget carrier_budget(const Scenario &s)
    {
        CarrierBudget budget;
        budget.offsets = s.offsets();
        budget.snr = carrier_snr(s.link, s.array, s.grid, s.target);
        const double edge = s.edge_offset();
        budget.efficiency.reserve(budget.offsets.size());
        for (double b : budget.offsets)
            budget.efficiency.push_back(impairment_factor(s.impairment, b, edge));

        const double N = static_cast<double>(s.array.n_elements);
        for (double g : budget.snr)
            budget.full_ttd_sum_se += std::log2(1.0 + g * N * s.hybrid_efficiency);
        return budget;
    }

    namespace
    {
        PerformanceResult finish(Architecture arch, std::vector<double> snr_eff, double full_ttd_sum_se)
        {
            PerformanceResult r;
            r.architecture = arch;
            r.per_carrier_se.reserve(snr_eff.size());
            for (double x : snr_eff)
            {
                const double se = std::log2(1.0 + x);
                r.per_carrier_se.push_back(se);
                r.sum_se += se;
            }
            r.per_carrier_snr = std::move(snr_eff);
            r.gap_vs_full_ttd = full_ttd_sum_se - r.sum_se;
            r.normalized_gap = full_ttd_sum_se > 0.0 ? std::clamp(r.gap_vs_full_ttd / full_ttd_sum_se, 0.0, 1.0) : 0.0;
            return r;
        }

        PerformanceResult phase_only_result(Architecture arch, const Scenario &s, const CarrierBudget &budget,
                                            std::span<const double> gains)
        {
            std::vector<double> snr_eff(budget.offsets.size());
            for (std::size_t m = 0; m < snr_eff.size(); ++m)
                snr_eff[m] = budget.snr[m] * gains[m] * budget.efficiency[m] * s.hybrid_efficiency;
            return finish(arch, std::move(snr_eff), budget.full_ttd_sum_se);
        }
    }

    PerformanceResult sum_se_full_ttd(const Scenario &s)
    {
        const auto budget = carrier_budget(s);
        const double N = static_cast<double>(s.array.n_elements);
        std::vector<double> snr_eff;
        snr_eff.reserve(budget.snr.size());
        for (double g : budget.snr)
            snr_eff.push_back(g * N * s.hybrid_efficiency);
        auto r = finish(Architecture::FullTTD_NBBG, std::move(snr_eff), budget.full_ttd_sum_se);
        r.gap_vs_full_ttd = 0.0;
        r.normalized_gap = 0.0;
        return r;
    }

    PerformanceResult sum_se_nbbg(const Scenario &s)
    {
        const auto budget = carrier_budget(s);
        std::vector<double> gains;
        gains.reserve(budget.offsets.size());
        if (s.array.element_spacing_fraction == 0.5)
        {
            for (double b : budget.offsets)
                gains.push_back(narrowband_gain_closed_form(s.array, b, s.target.angle_rad));
        }
        else
        {
            // The closed form assumes half-wavelength spacing; evaluate the MRT pattern directly.
            gains = per_carrier_gain(mrt_phases(s.array, s.target.angle_rad), s.array, budget.offsets, s.target.angle_rad);
        }
        return phase_only_result(Architecture::NonTTD_NBBG, s, budget, gains);
    }

    PerformanceResult sum_se_wbbg(const Scenario &s, const WbbgSolution &solution)
    {
        const auto budget = carrier_budget(s);
        if (solution.per_carrier_gain.size() != budget.offsets.size())
            throw std::invalid_argument("sum_se_wbbg: solution has " + std::to_string(solution.per_carrier_gain.size()) +
                                        " carrier gains, scenario has " + std::to_string(budget.offsets.size()) + " carriers");
        return phase_only_result(Architecture::NonTTD_WBBG, s, budget, solution.per_carrier_gain);
    }

    PerformanceResult sum_se_sparse_upper(const Scenario &s)
    {
        const auto budget = carrier_budget(s);
        const double N = static_cast<double>(s.array.n_elements);
        std::vector<double> snr_eff(budget.offsets.size());
        for (std::size_t m = 0; m < snr_eff.size(); ++m)
            snr_eff[m] = budget.snr[m] * N * budget.efficiency[m];
        return finish(Architecture::SparseTTD_upper, std::move(snr_eff), budget.full_ttd_sum_se);
    }

    GapResult performance_gap(const PerformanceResult &a, const PerformanceResult &ref)
    {
        if (a.per_carrier_snr.size() != ref.per_carrier_snr.size())
            throw std::invalid_argument("performance_gap: results have different carrier counts");

        GapResult g;
        g.gap = ref.sum_se - a.sum_se;
        g.normalized_gap = ref.sum_se > 0.0 ? std::clamp(g.gap / ref.sum_se, 0.0, 1.0) : 0.0;
        for (std::size_t m = 0; m < a.per_carrier_snr.size(); ++m)
            g.log_ratio_gap += std::log2((1.0 + ref.per_carrier_snr[m]) / (1.0 + a.per_carrier_snr[m]));
        return g;
    }

    unsigned resolve_workers(unsigned requested)
    {
        if (requested > 0)
            return requested;
        if (const char *env = std::getenv("SQUINT_WORKERS"))
        {
            unsigned value = 0;
            const std::string_view text(env);
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec == std::errc() && ptr == text.data() + text.size() && value > 0)
                return value;
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<SweepRow> sweep_fractional_bandwidth(const Scenario &base, std::span<const double> bf_grid,
                                                     const SweepOptions &opts)
    {
        for (double bf : bf_grid)
            if (!(bf >= 0.0 && bf < 2.0))
                throw ConfigError("fractional bandwidth " + format_double(bf) + " outside [0, 2)");

        std::vector<Scenario> scenarios;
        scenarios.reserve(bf_grid.size());
        for (double bf : bf_grid)
            scenarios.push_back(validate_scenario(base.with_fractional_bandwidth(bf)));

        constexpr std::size_t n_arch = std::size(all_architectures);
        std::vector<SweepRow> rows(bf_grid.size() * n_arch);

        WbbgOptions wbbg = opts.wbbg;
        wbbg.parallel = false; // parallelism lives at the bf level

        parallel_for(bf_grid.size(), resolve_workers(opts.workers), [&](std::size_t i) {
            const Scenario &s = scenarios[i];
            const auto solution = wbbg_optimize(s.array, s.grid, s.target.angle_rad, wbbg);
            const auto bounds = sparse_ttd_bounds(s, solution);
            const PerformanceResult results[] = {sum_se_full_ttd(s), sum_se_nbbg(s), sum_se_wbbg(s, solution),
                                                 bounds.lower, bounds.upper};
            for (std::size_t k = 0; k < n_arch; ++k)
            {
                SweepRow &row = rows[i * n_arch + k];
                row.bf = bf_grid[i];
                row.architecture = results[k].architecture;
                row.sum_se = results[k].sum_se;
                row.gap = results[k].gap_vs_full_ttd;
                row.normalized_gap = results[k].normalized_gap;
                row.seed = wbbg.seed;
                if (row.architecture == Architecture::NonTTD_WBBG)
                    row.wbbg_min_gain = solution.min_gain;
            }
        });

        std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
            if (a.bf != b.bf)
                return a.bf < b.bf;
            return static_cast<int>(a.architecture) < static_cast<int>(b.architecture);
        });
        return rows;
    }

    namespace
    {
        constexpr const char *sweep_header = "bf,architecture,sum_se_bps_hz,gap_bps_hz,normalized_gap,wbbg_min_gain,seed";

        std::string sci(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.16e", v);
            return buf;
        }
    }

    void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows)
    {
        out << sweep_header << "\n";
        for (const auto &r : rows)
        {
            out << sci(r.bf) << "," << to_string(r.architecture) << "," << sci(r.sum_se) << "," << sci(r.gap) << ","
                << sci(r.normalized_gap) << "," << (r.wbbg_min_gain ? sci(*r.wbbg_min_gain) : std::string()) << ","
                << r.seed << "\n";
        }
    }

    std::vector<SweepRow> read_sweep_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line != sweep_header)
            throw ConfigError("sweep CSV: missing or unexpected header");

        std::vector<SweepRow> rows;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ','))
                f.push_back(field);
            if (!line.empty() && line.back() == ',')
                f.emplace_back();
            if (f.size() != 7)
                throw ConfigError("sweep CSV line " + std::to_string(line_no) + ": expected 7 fields");

            const auto num = [&](const std::string &t) {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec != std::errc() || ptr != t.data() + t.size())
                    throw ConfigError("sweep CSV line " + std::to_string(line_no) + ": bad number '" + t + "'");
                return v;
            };
            SweepRow r;
            r.bf = num(f[0]);
            r.architecture = architecture_from_string(f[1]);
            r.sum_se = num(f[2]);
            r.gap = num(f[3]);
            r.normalized_gap = num(f[4]);
            if (!f[5].empty())
                r.wbbg_min_gain = num(f[5]);
            const auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), r.seed);
            if (ec != std::errc() || ptr != f[6].data() + f[6].size())
                throw ConfigError("sweep CSV line " + std::to_string(line_no) + ": bad seed");
            rows.push_back(r);
        }
        return rows;
    }
}
