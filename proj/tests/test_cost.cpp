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

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace squint;

namespace
{
    const ArrayConfig cfg64{64, 0.5, 28e9};
    constexpr std::size_t n_rf = 4;
    constexpr std::size_t k_sparse = 8;

    // Cost totals written straight from the unit-cost formulas.
    struct Totals
    {
        double non, sparse, full;
    };

    Totals oracle_totals(const CostModel &m, std::size_t n, std::size_t k, double bf)
    {
        const double N = static_cast<double>(n), K = static_cast<double>(k);
        const double rho = 1.0 - K / N;
        const double ps = m.ps_base * (1.0 + m.ps_bandwidth_gain * std::pow(bf, m.ps_bandwidth_exponent));
        const double ps_sparse = m.ps_base * (1.0 + m.ps_bandwidth_gain * std::pow(rho * bf, m.ps_bandwidth_exponent));
        const double ttd = m.ttd_base * (1.0 + m.ttd_bandwidth_slope * bf);
        const double rf = static_cast<double>(n_rf) * m.rf_chain_cost + m.fixed_cost;
        return {N * ps + rf, N * ps_sparse + K * ttd + rf, N * ttd + rf};
    }

    // Positive roots of a x^2 + b x + c.
    std::vector<double> positive_roots(double a, double b, double c)
    {
        const double d = std::sqrt(b * b - 4 * a * c);
        std::vector<double> r;
        for (double x : {(-b + d) / (2 * a), (-b - d) / (2 * a)})
            if (x > 0)
                r.push_back(x);
        return r;
    }

    std::vector<PerformanceResult> perf_rows(double full, double nb, double wb, double lo, double hi)
    {
        std::vector<PerformanceResult> rows(5);
        const Architecture a[] = {Architecture::FullTTD_NBBG, Architecture::NonTTD_NBBG, Architecture::NonTTD_WBBG,
                                  Architecture::SparseTTD_lower, Architecture::SparseTTD_upper};
        const double v[] = {full, nb, wb, lo, hi};
        for (int i = 0; i < 5; ++i)
        {
            rows[i].architecture = a[i];
            rows[i].sum_se = v[i];
        }
        return rows;
    }

    std::vector<CostBreakdown> cost_rows(double non, double sparse, double full)
    {
        std::vector<CostBreakdown> rows(3);
        rows[0].architecture = CostArchitecture::NonTTD;
        rows[0].total = non;
        rows[1].architecture = CostArchitecture::SparseTTD;
        rows[1].total = sparse;
        rows[2].architecture = CostArchitecture::FullTTD;
        rows[2].total = full;
        return rows;
    }
}

TEST_CASE("cost model validation")
{
    CHECK_NOTHROW(validate(CostModel{}));
    CostModel m;
    m.ps_bandwidth_exponent = 1.0;
    CHECK_THROWS_AS(validate(m), ConfigError);
    m = {};
    m.ttd_base = 0.5;
    CHECK_THROWS_AS(validate(m), ConfigError);
    m = {};
    m.ps_base = 0.0;
    CHECK_THROWS_AS(validate(m), ConfigError);
    m = {};
    m.ttd_bandwidth_slope = -1.0;
    CHECK_THROWS_AS(validate(m), ConfigError);
}

TEST_CASE("architecture cost")
{
    const CostModel m;
    SUBCASE("Full-TTD at zero bandwidth")
    {
        const auto c = architecture_cost(CostArchitecture::FullTTD, cfg64, n_rf, k_sparse, m, 0.0);
        CHECK(c.ps == 0.0);
        CHECK(c.ttd == 64 * 8.0);
        CHECK(c.total == 64 * 8.0 + 4 * 20.0);
    }
    SUBCASE("Non-TTD cheaper at zero bandwidth")
    {
        CHECK(architecture_cost(CostArchitecture::NonTTD, cfg64, n_rf, k_sparse, m, 0.0).total <
              architecture_cost(CostArchitecture::FullTTD, cfg64, n_rf, k_sparse, m, 0.0).total);
    }
    SUBCASE("against the formulas")
    {
        CostModel mm;
        mm.fixed_cost = 13.0;
        mm.ps_bandwidth_exponent = 2.5;
        for (int i = 0; i <= 50; ++i)
        {
            const double bf = 0.02 * i;
            const auto t = oracle_totals(mm, 64, k_sparse, bf);
            const auto non = architecture_cost(CostArchitecture::NonTTD, cfg64, n_rf, k_sparse, mm, bf);
            const auto sp = architecture_cost(CostArchitecture::SparseTTD, cfg64, n_rf, k_sparse, mm, bf);
            const auto full = architecture_cost(CostArchitecture::FullTTD, cfg64, n_rf, k_sparse, mm, bf);
            CHECK(non.total == doctest::Approx(t.non).epsilon(1e-13));
            CHECK(sp.total == doctest::Approx(t.sparse).epsilon(1e-13));
            CHECK(full.total == doctest::Approx(t.full).epsilon(1e-13));
            for (const auto &c : {non, sp, full})
                CHECK(c.total == doctest::Approx(c.ps + c.ttd + c.rf + c.fixed).epsilon(1e-15));
        }
    }
    SUBCASE("counts")
    {
        const auto h = hardware_counts(CostArchitecture::SparseTTD, 64, 4, 8);
        CHECK(h.n_ps == 64);
        CHECK(h.n_ttd == 8);
        CHECK(hardware_counts(CostArchitecture::FullTTD, 64, 4, 8).n_ps == 0);
        CHECK(hardware_counts(CostArchitecture::NonTTD, 64, 4, 8).n_ttd == 0);
        CHECK_THROWS_AS(hardware_counts(CostArchitecture::SparseTTD, 64, 4, 65), std::invalid_argument);
        CHECK_THROWS_AS(architecture_cost(CostArchitecture::NonTTD, cfg64, n_rf, k_sparse, m, -0.1),
                        std::invalid_argument);
    }
}

TEST_CASE("crossover thresholds")
{
    const CostModel m;
    const auto th = crossover_thresholds(cfg64, n_rf, k_sparse, m);
    CHECK_FALSE(th.degenerate);
    CHECK(th.th1 > 0.0);
    CHECK(th.th1 < th.th2);
    CHECK(th.th2 < 1.0);

    SUBCASE("matches the quadratic roots")
    {
        // With p = 2 every pairwise difference is quadratic in bf.
        const double N = 64, K = 8, rho = 1 - K / N, k = m.ps_bandwidth_gain, s = m.ttd_bandwidth_slope;
        const double tb = m.ttd_base, pb = m.ps_base;
        std::vector<double> roots;
        for (auto r : positive_roots(N * pb * k * (1 - rho * rho), -K * tb * s, -K * tb)) // Non - Sparse
            roots.push_back(r);
        for (auto r : positive_roots(N * pb * k * rho * rho, (K - N) * tb * s, N * pb + (K - N) * tb)) // Sparse - Full
            roots.push_back(r);
        for (auto r : positive_roots(N * pb * k, -N * tb * s, N * pb - N * tb)) // Non - Full
            roots.push_back(r);
        CHECK(th.th1 == doctest::Approx(*std::min_element(roots.begin(), roots.end())).epsilon(1e-6));
        CHECK(th.th2 == doctest::Approx(*std::max_element(roots.begin(), roots.end())).epsilon(1e-6));
    }
    SUBCASE("regimes on either side")
    {
        for (int i = 1; i < 100; ++i)
        {
            const double below = th.th1 * i / 100.0;
            const auto a = oracle_totals(m, 64, k_sparse, below);
            CHECK(a.non < a.sparse);
            CHECK(a.sparse < a.full);
            const double above = th.th2 + (1.0 - th.th2) * i / 100.0;
            const auto b = oracle_totals(m, 64, k_sparse, above);
            CHECK(b.full < b.sparse);
            CHECK(b.sparse < b.non);
        }
    }
    SUBCASE("flat PS cost has no crossover")
    {
        CostModel flat;
        flat.ps_bandwidth_gain = 0.0;
        CHECK_THROWS_WITH_AS(crossover_thresholds(cfg64, n_rf, k_sparse, flat), doctest::Contains("no crossover in range"),
                             ComputeError);
    }
    SUBCASE("no sparse TTDs is degenerate")
    {
        const auto d = crossover_thresholds(cfg64, n_rf, 0, m);
        CHECK(d.degenerate);
        CHECK(d.th1 == d.th2);
        const double r = positive_roots(64 * m.ps_bandwidth_gain, -64 * 8 * 0.5, 64 - 64 * 8.0).front();
        CHECK(d.th1 == doctest::Approx(r).epsilon(1e-6));
        CHECK(architecture_cost(CostArchitecture::SparseTTD, cfg64, n_rf, 0, m, 0.4).total ==
              architecture_cost(CostArchitecture::NonTTD, cfg64, n_rf, 0, m, 0.4).total);
    }
    SUBCASE("range too short")
    {
        CHECK_THROWS_AS(crossover_thresholds(cfg64, n_rf, k_sparse, m, 0.1), ComputeError);
    }
}

TEST_CASE("advise on fixed tables")
{
    const auto perf = perf_rows(100.0, 60.0, 80.0, 80.0, 95.0);
    const auto costs = cost_rows(500.0, 700.0, 1000.0);

    SUBCASE("performance only")
    {
        CHECK(advise(0.1, 1.0, 0.0, perf, costs).recommended == Candidate::FullTTD_NBBG);
    }
    SUBCASE("cost only: NBBG and WBBG tie on hardware, NBBG listed first")
    {
        const auto rec = advise(0.1, 0.0, 1.0, perf, costs);
        CHECK(rec.recommended == Candidate::NonTTD_NBBG);
        REQUIRE(rec.scores.size() == 4);
        CHECK(rec.scores[0].score == rec.scores[1].score);
    }
    SUBCASE("score table")
    {
        const auto rec = advise(0.1, 0.5, 0.5, perf, costs);
        const auto &sp = rec.scores[2];
        CHECK(sp.candidate == Candidate::SparseTTD_NBBG);
        CHECK(sp.sum_se == doctest::Approx(87.5));
        CHECK(sp.normalized_se == doctest::Approx(0.875));
        CHECK(sp.normalized_cost == doctest::Approx(0.7));
        CHECK(sp.score == doctest::Approx(0.5 * 0.875 - 0.5 * 0.7));
        // NonTTD-WBBG: 0.5*0.8 - 0.5*0.5 = 0.15 is the best
        CHECK(rec.recommended == Candidate::NonTTD_WBBG);
    }
    SUBCASE("ties go to the cheaper candidate")
    {
        // Full: 0.5*1 - 0.5*1 = 0; Non-NBBG: 0.5*0.5 - 0.5*0.5 = 0
        const auto p = perf_rows(100.0, 50.0, 10.0, 10.0, 10.0);
        const auto rec = advise(0.1, 0.5, 0.5, p, cost_rows(500.0, 900.0, 1000.0));
        CHECK(rec.scores[0].score == rec.scores[3].score);
        CHECK(rec.recommended == Candidate::NonTTD_NBBG);
    }
    SUBCASE("input checks")
    {
        CHECK_THROWS_AS(advise(0.1, 0.6, 0.6, perf, costs), ConfigError);
        CHECK_THROWS_AS(advise(0.1, -0.1, 1.1, perf, costs), ConfigError);
        auto missing = perf;
        missing.pop_back();
        CHECK_THROWS_AS(advise(0.1, 0.5, 0.5, missing, costs), std::invalid_argument);
        auto no_cost = costs;
        no_cost.erase(no_cost.begin());
        CHECK_THROWS_AS(advise(0.1, 0.5, 0.5, perf, no_cost), std::invalid_argument);
    }
}

TEST_CASE("advise: raising a cost never improves the rank")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto rank_of = [](const Recommendation &rec, Candidate c) {
        // 0 = recommended; others by score then cost
        auto s = rec.scores;
        std::stable_sort(s.begin(), s.end(), [](const CandidateScore &a, const CandidateScore &b) {
            if (a.score != b.score)
                return a.score > b.score;
            return a.cost < b.cost;
        });
        return std::find_if(s.begin(), s.end(), [&](const CandidateScore &x) { return x.candidate == c; }) - s.begin();
    };
    for (int i = 0; i < 300; ++i)
    {
        const double full = 100.0;
        const double lo = 100 * u(rng), hi = lo + (100 - lo) * u(rng);
        const auto perf = perf_rows(full, 100 * u(rng), 100 * u(rng), lo, hi);
        double c[3] = {100 + 900 * u(rng), 100 + 900 * u(rng), 100 + 900 * u(rng)};
        const double w = u(rng);
        const auto before = advise(0.1, w, 1 - w, perf, cost_rows(c[0], c[1], c[2]));
        const int bump = i % 3;
        c[bump] *= 1.0 + u(rng);
        const auto after = advise(0.1, w, 1 - w, perf, cost_rows(c[0], c[1], c[2]));
        for (auto cand : all_candidates)
            if (static_cast<int>(hardware_of(cand)) == bump)
                CHECK(rank_of(after, cand) >= rank_of(before, cand));
        // pure function
        const auto again = advise(0.1, w, 1 - w, perf, cost_rows(c[0], c[1], c[2]));
        CHECK(again.recommended == after.recommended);
        CHECK(again.scores[2].score == after.scores[2].score);
    }
}

TEST_CASE("advise on scenarios")
{
    SUBCASE("ideal PSs and performance weight 1 pick Full-TTD")
    {
        for (double bf : {0.01, 0.1, 0.3})
        {
            Scenario s = mmwave_reference_scenario(bf);
            s.impairment.kind = ImpairmentKind::ideal;
            CHECK(advise_scenario(s, 1.0, 0.0).recommended == Candidate::FullTTD_NBBG);
        }
    }
    SUBCASE("record and report")
    {
        const auto rec = advise_scenario(mmwave_reference_scenario(0.05), 0.5, 0.5);
        REQUIRE(rec.thresholds.has_value());
        const auto j = nlohmann::json::parse(recommendation_json(rec));
        CHECK(j["architecture"] == std::string(to_string(rec.recommended)));
        CHECK(j["scores"].size() == 4);
        CHECK(j["th1"].get<double>() == rec.thresholds->th1);
        CHECK(j["th2"].get<double>() == rec.thresholds->th2);
        std::ostringstream text;
        write_recommendation_report(text, rec);
        CHECK(text.str().find("recommended: " + std::string(to_string(rec.recommended))) != std::string::npos);
        CHECK(text.str().find("th1") != std::string::npos);
    }
    SUBCASE("no thresholds when the model has none")
    {
        AdvisorSettings settings;
        settings.model.ps_bandwidth_gain = 0.0;
        CHECK_FALSE(advise_scenario(mmwave_reference_scenario(0.05), 0.5, 0.5, settings).thresholds.has_value());
    }
}

TEST_CASE("cost sweep CSV")
{
    const std::vector<double> grid = {0.0, 0.25, 0.5};
    const auto rows = sweep_cost(cfg64, n_rf, k_sparse, CostModel{}, grid);
    REQUIRE(rows.size() == 9);
    std::ostringstream out;
    write_cost_csv(out, rows);
    CHECK(out.str().rfind("bf,architecture,total_cost,ps_cost,ttd_cost,rf_cost\n", 0) == 0);
    std::istringstream in(out.str());
    const auto back = read_cost_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        CHECK(back[i].bf == rows[i].bf);
        CHECK(back[i].cost.architecture == rows[i].cost.architecture);
        CHECK(back[i].cost.total == rows[i].cost.total);
        CHECK(back[i].cost.ps == rows[i].cost.ps);
    }
}
