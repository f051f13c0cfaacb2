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

#include "squint/cost.hpp"

#include "squint/sparse_ttd.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace squint
{
    double CostModel::ps_unit_cost(double bf) const
    {
        return ps_base * (1.0 + ps_bandwidth_gain * std::pow(bf, ps_bandwidth_exponent));
    }

    double CostModel::ttd_unit_cost(double bf) const
    {
        return ttd_base * (1.0 + ttd_bandwidth_slope * bf);
    }

    void validate(const CostModel &m)
    {
        const auto positive = [](double v, const char *name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(std::string("cost model: ") + name + " must be > 0, got " + format_double(v));
        };
        const auto non_negative = [](double v, const char *name) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError(std::string("cost model: ") + name + " must be >= 0, got " + format_double(v));
        };
        positive(m.ps_base, "ps_base");
        positive(m.ttd_base, "ttd_base");
        non_negative(m.ps_bandwidth_gain, "ps_bandwidth_gain");
        non_negative(m.ttd_bandwidth_slope, "ttd_bandwidth_slope");
        non_negative(m.rf_chain_cost, "rf_chain_cost");
        non_negative(m.fixed_cost, "fixed_cost");
        if (!(m.ps_bandwidth_exponent > 1.0) || !std::isfinite(m.ps_bandwidth_exponent))
            throw ConfigError("cost model: ps_bandwidth_exponent must be > 1, got " + format_double(m.ps_bandwidth_exponent));
        if (!(m.ttd_base > m.ps_base))
            throw ConfigError("cost model: ttd_base (" + format_double(m.ttd_base) + ") must exceed ps_base (" +
                              format_double(m.ps_base) + ")");
    }

    std::string_view to_string(CostArchitecture arch)
    {
        switch (arch)
        {
        case CostArchitecture::NonTTD:
            return "NonTTD";
        case CostArchitecture::SparseTTD:
            return "SparseTTD";
        case CostArchitecture::FullTTD:
            return "FullTTD";
        }
        return "?";
    }

    namespace
    {
        CostArchitecture cost_architecture_from_string(std::string_view text)
        {
            for (auto a : all_cost_architectures)
                if (to_string(a) == text)
                    return a;
            throw ConfigError("unknown cost architecture '" + std::string(text) + "'");
        }

        void check_counts(std::size_t n_elements, std::size_t n_ttd_sparse)
        {
            if (n_elements == 0)
                throw std::invalid_argument("cost: array has no elements");
            if (n_ttd_sparse > n_elements)
                throw std::invalid_argument("cost: n_ttd_sparse (" + std::to_string(n_ttd_sparse) +
                                            ") exceeds the element count (" + std::to_string(n_elements) + ")");
        }
    }

    HardwareCounts hardware_counts(CostArchitecture arch, std::size_t n_elements, std::size_t n_rf, std::size_t n_ttd_sparse)
    {
        check_counts(n_elements, n_ttd_sparse);
        switch (arch)
        {
        case CostArchitecture::NonTTD:
            return {n_elements, 0, n_rf};
        case CostArchitecture::SparseTTD:
            return {n_elements, n_ttd_sparse, n_rf};
        case CostArchitecture::FullTTD:
            return {0, n_elements, n_rf};
        }
        throw std::invalid_argument("cost: unknown architecture");
    }

    CostBreakdown architecture_cost(CostArchitecture arch, const ArrayConfig &cfg, std::size_t n_rf,
                                    std::size_t n_ttd_sparse, const CostModel &model, double bf)
    {
        if (!(bf >= 0.0) || !std::isfinite(bf))
            throw std::invalid_argument("cost: fractional bandwidth must be >= 0, got " + format_double(bf));
        const auto counts = hardware_counts(arch, cfg.n_elements, n_rf, n_ttd_sparse);

        double ps_bf = bf;
        if (arch == CostArchitecture::SparseTTD)
            ps_bf = bf * (1.0 - static_cast<double>(n_ttd_sparse) / static_cast<double>(cfg.n_elements));

        CostBreakdown c;
        c.architecture = arch;
        c.ps = static_cast<double>(counts.n_ps) * model.ps_unit_cost(ps_bf);
        c.ttd = static_cast<double>(counts.n_ttd) * model.ttd_unit_cost(bf);
        c.rf = static_cast<double>(counts.n_rf) * model.rf_chain_cost;
        c.fixed = model.fixed_cost;
        c.total = c.ps + c.ttd + c.rf + c.fixed;
        return c;
    }

    CrossoverThresholds crossover_thresholds(const ArrayConfig &cfg, std::size_t n_rf, std::size_t n_ttd_sparse,
                                             const CostModel &model, double bf_max)
    {
        validate(model);
        check_counts(cfg.n_elements, n_ttd_sparse);
        if (!(bf_max > 0.0) || !std::isfinite(bf_max))
            throw std::invalid_argument("crossover_thresholds: bf_max must be > 0");

        const bool degenerate = n_ttd_sparse == 0;
        const auto total = [&](CostArchitecture a, double bf) {
            return architecture_cost(a, cfg, n_rf, n_ttd_sparse, model, bf).total;
        };
        using CA = CostArchitecture;
        // Pairwise differences whose roots bound the regions. With no sparse TTDs the Sparse
        // column equals Non-TTD and only the Non/Full pair is meaningful.
        std::vector<std::pair<CA, CA>> pairs = {{CA::NonTTD, CA::FullTTD}};
        if (!degenerate)
        {
            pairs.push_back({CA::NonTTD, CA::SparseTTD});
            pairs.push_back({CA::SparseTTD, CA::FullTTD});
        }
        const auto diff = [&](std::size_t k, double bf) { return total(pairs[k].first, bf) - total(pairs[k].second, bf); };

        constexpr int scan_points = 4096;
        const double lo_bf = bf_max / scan_points;
        // Near zero each pair must have the first element cheaper, at bf_max the second.
        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            if (!(diff(k, lo_bf) < 0.0) || !(diff(k, bf_max) > 0.0))
                throw ComputeError("no crossover in range (0, " + format_double(bf_max) + "]: " +
                                   std::string(to_string(pairs[k].first)) + " vs " +
                                   std::string(to_string(pairs[k].second)) + " keeps its order");
        }

        double th1 = bf_max, th2 = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            double prev_bf = lo_bf, prev = diff(k, lo_bf);
            for (int i = 2; i <= scan_points; ++i)
            {
                const double bf = bf_max * i / scan_points;
                const double cur = diff(k, bf);
                if ((prev < 0.0) != (cur < 0.0))
                {
                    double a = prev_bf, b = bf;
                    const bool a_negative = prev < 0.0;
                    while (b - a > 1e-9 * b)
                    {
                        const double mid = 0.5 * (a + b);
                        if ((diff(k, mid) < 0.0) == a_negative)
                            a = mid;
                        else
                            b = mid;
                    }
                    const double root = 0.5 * (a + b);
                    th1 = std::min(th1, root);
                    th2 = std::max(th2, root);
                }
                prev_bf = bf;
                prev = cur;
            }
        }
        return {th1, th2, degenerate};
    }

    std::string_view to_string(Candidate c)
    {
        switch (c)
        {
        case Candidate::NonTTD_NBBG:
            return "NonTTD-NBBG";
        case Candidate::NonTTD_WBBG:
            return "NonTTD-WBBG";
        case Candidate::SparseTTD_NBBG:
            return "SparseTTD-NBBG";
        case Candidate::FullTTD_NBBG:
            return "FullTTD-NBBG";
        }
        return "?";
    }

    CostArchitecture hardware_of(Candidate c)
    {
        switch (c)
        {
        case Candidate::NonTTD_NBBG:
        case Candidate::NonTTD_WBBG:
            return CostArchitecture::NonTTD;
        case Candidate::SparseTTD_NBBG:
            return CostArchitecture::SparseTTD;
        case Candidate::FullTTD_NBBG:
            return CostArchitecture::FullTTD;
        }
        return CostArchitecture::NonTTD;
    }

    Recommendation advise(double fractional_bandwidth, double perf_weight, double cost_weight,
                          std::span<const PerformanceResult> perf_results, std::span<const CostBreakdown> costs,
                          std::optional<CrossoverThresholds> thresholds)
    {
        const auto in_unit = [](double w) { return w >= 0.0 && w <= 1.0; };
        if (!in_unit(perf_weight) || !in_unit(cost_weight) || std::abs(perf_weight + cost_weight - 1.0) > 1e-12)
            throw ConfigError("advise: weights must lie in [0, 1] and sum to 1, got perf " + format_double(perf_weight) +
                              " and cost " + format_double(cost_weight));

        const auto find_perf = [&](Architecture a) -> const PerformanceResult & {
            for (const auto &r : perf_results)
                if (r.architecture == a)
                    return r;
            throw std::invalid_argument("advise: missing performance row for " + std::string(to_string(a)));
        };
        const auto find_cost = [&](CostArchitecture a) -> const CostBreakdown & {
            for (const auto &c : costs)
                if (c.architecture == a)
                    return c;
            throw std::invalid_argument("advise: missing cost row for " + std::string(to_string(a)));
        };

        const double r_fn = find_perf(Architecture::FullTTD_NBBG).sum_se;
        double max_cost = 0.0;
        for (auto a : all_cost_architectures)
            max_cost = std::max(max_cost, find_cost(a).total);

        Recommendation rec;
        rec.fractional_bandwidth = fractional_bandwidth;
        rec.perf_weight = perf_weight;
        rec.cost_weight = cost_weight;
        rec.thresholds = thresholds;

        for (auto c : all_candidates)
        {
            CandidateScore s;
            s.candidate = c;
            switch (c)
            {
            case Candidate::NonTTD_NBBG:
                s.sum_se = find_perf(Architecture::NonTTD_NBBG).sum_se;
                break;
            case Candidate::NonTTD_WBBG:
                s.sum_se = find_perf(Architecture::NonTTD_WBBG).sum_se;
                break;
            case Candidate::SparseTTD_NBBG:
                s.sum_se = 0.5 * (find_perf(Architecture::SparseTTD_lower).sum_se +
                                  find_perf(Architecture::SparseTTD_upper).sum_se);
                break;
            case Candidate::FullTTD_NBBG:
                s.sum_se = r_fn;
                break;
            }
            s.normalized_se = r_fn > 0.0 ? s.sum_se / r_fn : 0.0;
            s.cost = find_cost(hardware_of(c)).total;
            s.normalized_cost = max_cost > 0.0 ? s.cost / max_cost : 0.0;
            s.score = perf_weight * s.normalized_se - cost_weight * s.normalized_cost;
            rec.scores.push_back(s);
        }

        const CandidateScore *best = &rec.scores.front();
        for (const auto &s : rec.scores)
        {
            if (s.score > best->score || (s.score == best->score && s.cost < best->cost))
                best = &s;
        }
        rec.recommended = best->candidate;
        return rec;
    }

    std::size_t AdvisorSettings::sparse_ttd_count(const ArrayConfig &cfg) const
    {
        return n_ttd_sparse ? *n_ttd_sparse : cfg.n_elements / 8;
    }

    Recommendation advise_scenario(const Scenario &s, double perf_weight, double cost_weight, const AdvisorSettings &settings)
    {
        const Scenario v = validate_scenario(s);
        validate(settings.model);
        const double bf = v.fractional_bandwidth();
        const std::size_t k = settings.sparse_ttd_count(v.array);

        const auto solution = wbbg_optimize(v.array, v.grid, v.target.angle_rad, settings.wbbg);
        const auto bounds = sparse_ttd_bounds(v, solution);
        const PerformanceResult perf[] = {sum_se_full_ttd(v), sum_se_nbbg(v), sum_se_wbbg(v, solution), bounds.lower,
                                          bounds.upper};

        std::vector<CostBreakdown> costs;
        for (auto a : all_cost_architectures)
            costs.push_back(architecture_cost(a, v.array, settings.n_rf, k, settings.model, bf));

        std::optional<CrossoverThresholds> th;
        try
        {
            th = crossover_thresholds(v.array, settings.n_rf, k, settings.model);
        }
        catch (const ComputeError &)
        {
        }
        return advise(bf, perf_weight, cost_weight, perf, costs, th);
    }

    namespace
    {
        std::string fixed(double v, int digits)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
            return buf;
        }

        std::string sci(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.16e", v);
            return buf;
        }
    }

    void write_recommendation_report(std::ostream &out, const Recommendation &rec)
    {
        out << "fractional bandwidth  " << format_double(rec.fractional_bandwidth) << "\n";
        out << "weights               perf " << format_double(rec.perf_weight) << ", cost "
            << format_double(rec.cost_weight) << "\n";
        if (rec.thresholds)
        {
            out << "th1                   " << fixed(rec.thresholds->th1, 6) << "\n";
            out << "th2                   " << fixed(rec.thresholds->th2, 6)
                << (rec.thresholds->degenerate ? "  (degenerate: no sparse TTDs)" : "") << "\n";
        }
        else
            out << "th1/th2               none in (0, 1]\n";
        out << "\n";

        char line[160];
        std::snprintf(line, sizeof(line), "%-16s %12s %10s %12s %10s %10s\n", "architecture", "sum_se", "se/R_FN",
                      "cost", "cost/max", "score");
        out << line;
        for (const auto &s : rec.scores)
        {
            std::snprintf(line, sizeof(line), "%-16s %12.4f %10.4f %12.2f %10.4f %10.4f%s\n",
                          std::string(to_string(s.candidate)).c_str(), s.sum_se, s.normalized_se, s.cost,
                          s.normalized_cost, s.score, s.candidate == rec.recommended ? "  <-" : "");
            out << line;
        }
        out << "\nrecommended: " << to_string(rec.recommended) << "\n";
    }

    std::string recommendation_json(const Recommendation &rec)
    {
        nlohmann::ordered_json j;
        j["architecture"] = std::string(to_string(rec.recommended));
        j["fractional_bandwidth"] = rec.fractional_bandwidth;
        j["perf_weight"] = rec.perf_weight;
        j["cost_weight"] = rec.cost_weight;
        if (rec.thresholds)
        {
            j["th1"] = rec.thresholds->th1;
            j["th2"] = rec.thresholds->th2;
            j["degenerate"] = rec.thresholds->degenerate;
        }
        else
        {
            j["th1"] = nullptr;
            j["th2"] = nullptr;
        }
        auto scores = nlohmann::ordered_json::array();
        for (const auto &s : rec.scores)
        {
            nlohmann::ordered_json e;
            e["architecture"] = std::string(to_string(s.candidate));
            e["sum_se"] = s.sum_se;
            e["normalized_se"] = s.normalized_se;
            e["cost"] = s.cost;
            e["normalized_cost"] = s.normalized_cost;
            e["score"] = s.score;
            scores.push_back(e);
        }
        j["scores"] = scores;
        return j.dump(2);
    }

    std::vector<CostSweepRow> sweep_cost(const ArrayConfig &cfg, std::size_t n_rf, std::size_t n_ttd_sparse,
                                         const CostModel &model, std::span<const double> bf_grid)
    {
        validate(model);
        std::vector<CostSweepRow> rows;
        rows.reserve(bf_grid.size() * 3);
        for (double bf : bf_grid)
            for (auto a : all_cost_architectures)
                rows.push_back({bf, architecture_cost(a, cfg, n_rf, n_ttd_sparse, model, bf)});
        return rows;
    }

    namespace
    {
        constexpr const char *cost_header = "bf,architecture,total_cost,ps_cost,ttd_cost,rf_cost";
    }

    void write_cost_csv(std::ostream &out, std::span<const CostSweepRow> rows)
    {
        out << cost_header << "\n";
        for (const auto &r : rows)
            out << sci(r.bf) << "," << to_string(r.cost.architecture) << "," << sci(r.cost.total) << ","
                << sci(r.cost.ps) << "," << sci(r.cost.ttd) << "," << sci(r.cost.rf) << "\n";
    }

    std::vector<CostSweepRow> read_cost_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line != cost_header)
            throw ConfigError("cost CSV: missing or unexpected header");

        std::vector<CostSweepRow> rows;
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
            if (f.size() != 6)
                throw ConfigError("cost CSV line " + std::to_string(line_no) + ": expected 6 fields");
            const auto num = [&](const std::string &t) {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec != std::errc() || ptr != t.data() + t.size())
                    throw ConfigError("cost CSV line " + std::to_string(line_no) + ": bad number '" + t + "'");
                return v;
            };
            CostSweepRow r;
            r.bf = num(f[0]);
            r.cost.architecture = cost_architecture_from_string(f[1]);
            r.cost.total = num(f[2]);
            r.cost.ps = num(f[3]);
            r.cost.ttd = num(f[4]);
            r.cost.rf = num(f[5]);
            r.cost.fixed = r.cost.total - r.cost.ps - r.cost.ttd - r.cost.rf;
            rows.push_back(r);
        }
        return rows;
    }
}
