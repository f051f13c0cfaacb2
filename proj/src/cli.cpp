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

#include "squint/cli.hpp"

#include "squint/array.hpp"
#include "squint/beamform.hpp"
#include "squint/perf.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#ifndef SQUINT_VERSION
#define SQUINT_VERSION "unknown"
#endif

namespace squint::cli
{
    std::string tool_version()
    {
        return SQUINT_VERSION;
    }

    std::string RunConfig::canonical_text() const
    {
        std::ostringstream out;
        out << to_config_text(scenario);
        out << "wbbg.restarts = " << wbbg.restarts << "\n"
            << "wbbg.max_iters = " << wbbg.max_iters << "\n"
            << "wbbg.tolerance = " << format_double(wbbg.tolerance) << "\n"
            << "seed = " << wbbg.seed << "\n";
        const auto &m = advisor.model;
        out << "cost.ps_base = " << format_double(m.ps_base) << "\n"
            << "cost.ps_bandwidth_gain = " << format_double(m.ps_bandwidth_gain) << "\n"
            << "cost.ps_bandwidth_exponent = " << format_double(m.ps_bandwidth_exponent) << "\n"
            << "cost.ttd_base = " << format_double(m.ttd_base) << "\n"
            << "cost.ttd_bandwidth_slope = " << format_double(m.ttd_bandwidth_slope) << "\n"
            << "cost.rf_chain_cost = " << format_double(m.rf_chain_cost) << "\n"
            << "cost.fixed_cost = " << format_double(m.fixed_cost) << "\n"
            << "cost.n_rf = " << advisor.n_rf << "\n"
            << "cost.n_ttd_sparse = " << advisor.sparse_ttd_count(scenario.array) << "\n";
        return out.str();
    }

    RunConfig run_config_from(const KeyValueConfig &config)
    {
        RunConfig rc;
        rc.scenario = scenario_from_config(config);

        const auto non_negative_int = [&](const char *key) -> std::optional<std::int64_t> {
            auto v = config.get_int(key);
            if (v && *v < 0)
                throw ConfigError(std::string(key) + " must be >= 0");
            return v;
        };

        if (auto v = non_negative_int("wbbg.restarts"))
            rc.wbbg.restarts = static_cast<int>(*v);
        if (auto v = non_negative_int("wbbg.max_iters"))
            rc.wbbg.max_iters = static_cast<int>(*v);
        if (auto v = config.get_double("wbbg.tolerance"))
        {
            if (!(*v > 0.0))
                throw ConfigError("wbbg.tolerance must be > 0");
            rc.wbbg.tolerance = *v;
        }
        if (auto v = non_negative_int("seed"))
            rc.wbbg.seed = static_cast<std::uint64_t>(*v);

        auto &m = rc.advisor.model;
        const std::pair<const char *, double *> cost_keys[] = {
            {"cost.ps_base", &m.ps_base},
            {"cost.ps_bandwidth_gain", &m.ps_bandwidth_gain},
            {"cost.ps_bandwidth_exponent", &m.ps_bandwidth_exponent},
            {"cost.ttd_base", &m.ttd_base},
            {"cost.ttd_bandwidth_slope", &m.ttd_bandwidth_slope},
            {"cost.rf_chain_cost", &m.rf_chain_cost},
            {"cost.fixed_cost", &m.fixed_cost},
        };
        for (const auto &[key, target] : cost_keys)
            if (auto v = config.get_double(key))
                *target = *v;
        if (auto v = non_negative_int("cost.n_rf"))
            rc.advisor.n_rf = static_cast<std::size_t>(*v);
        if (auto v = non_negative_int("cost.n_ttd_sparse"))
            rc.advisor.n_ttd_sparse = static_cast<std::size_t>(*v);

        const auto unused = config.unused_keys();
        if (!unused.empty())
            throw ConfigError("unknown configuration key '" + unused.front() + "'");
        rc.advisor.wbbg = rc.wbbg;
        return rc;
    }

    RunConfig load_run_config(const std::string &path)
    {
        return run_config_from(KeyValueConfig::parse_file(path));
    }

    std::string sha256_hex(const std::string &data)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
            throw ComputeError("SHA-256 digest failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string text;
        text.reserve(2 * length);
        for (unsigned int i = 0; i < length; ++i)
        {
            text.push_back(hex[digest[i] >> 4]);
            text.push_back(hex[digest[i] & 0xf]);
        }
        return text;
    }

    std::string manifest_json(const RunManifest &manifest)
    {
        nlohmann::ordered_json j;
        j["command"] = manifest.command;
        j["scenario_digest"] = manifest.scenario_digest;
        j["seed"] = manifest.seed;
        j["tool_version"] = manifest.tool_version;
        j["timestamp_utc"] = manifest.timestamp_utc;
        return j.dump(2) + "\n";
    }

    std::vector<double> bf_grid(double bf_min, double bf_max, std::size_t steps)
    {
        if (steps == 0)
            throw ConfigError("empty grid: --bf-steps must be >= 1");
        if (!std::isfinite(bf_min) || !std::isfinite(bf_max) || bf_min > bf_max)
            throw ConfigError("bf range [" + format_double(bf_min) + ", " + format_double(bf_max) + "] is invalid");
        if (steps == 1)
            return {bf_min};
        std::vector<double> grid(steps);
        const double step = (bf_max - bf_min) / static_cast<double>(steps - 1);
        for (std::size_t i = 0; i < steps; ++i)
            grid[i] = bf_min + step * static_cast<double>(i);
        grid.back() = bf_max;
        return grid;
    }

    namespace
    {
        std::string utc_now()
        {
            const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            char buf[32];
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }

        std::string sci(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.16e", v);
            return buf;
        }

        struct Common
        {
            std::string config_path;
            std::string preset = "mmwave";
            std::string out_path;
            std::optional<std::uint64_t> seed;
        };

        RunConfig resolve_config(const Common &c)
        {
            RunConfig rc;
            if (!c.config_path.empty())
                rc = load_run_config(c.config_path);
            else if (c.preset == "mmwave")
                rc.scenario = mmwave_reference_scenario();
            else if (c.preset == "subthz")
                rc.scenario = subthz_reference_scenario();
            else
                throw ConfigError("unknown preset '" + c.preset + "' (mmwave, subthz)");
            if (c.seed)
                rc.wbbg.seed = *c.seed;
            rc.advisor.wbbg = rc.wbbg;
            rc.scenario = validate_scenario(rc.scenario);
            return rc;
        }

        // Writes to the --out file (plus manifest sidecar) or to stdout.
        void emit(const Common &c, const std::string &command, const RunConfig *rc, const std::string &body,
                  std::ostream &out)
        {
            if (c.out_path.empty())
            {
                out << body;
                return;
            }
            {
                std::ofstream file(c.out_path, std::ios::binary);
                if (!file)
                    throw ComputeError("cannot write '" + c.out_path + "'");
                file << body;
                if (!file)
                    throw ComputeError("write to '" + c.out_path + "' failed");
            }
            RunManifest manifest;
            manifest.command = command;
            manifest.scenario_digest = rc ? sha256_hex(rc->canonical_text()) : sha256_hex("");
            manifest.seed = rc ? rc->wbbg.seed : 0;
            manifest.tool_version = tool_version();
            manifest.timestamp_utc = utc_now();
            std::ofstream side(c.out_path + ".manifest.json", std::ios::binary);
            if (!side)
                throw ComputeError("cannot write '" + c.out_path + ".manifest.json'");
            side << manifest_json(manifest);
        }

        void add_common(CLI::App *sub, Common &c, bool with_seed)
        {
            sub->add_option("config", c.config_path, "Scenario file (key = value)")->check(CLI::ExistingFile);
            sub->add_option("--preset", c.preset, "Built-in scenario when no file is given: mmwave | subthz");
            sub->add_option("-o,--out", c.out_path, "Output file; a <out>.manifest.json sidecar is written next to it");
            if (with_seed)
                sub->add_option("--seed", c.seed, "Seed for the max-min optimizer restarts (default: config, else 0)");
        }

        std::string join_command(const std::vector<std::string> &args)
        {
            std::string text = "squint";
            for (const auto &a : args)
                text += " " + a;
            return text;
        }

        std::string pattern_csv(const RunConfig &rc, const std::vector<double> &offsets, std::size_t angle_steps)
        {
            const Scenario &s = rc.scenario;
            const double theta_u = s.target.angle_rad;

            std::vector<double> angles;
            if (angle_steps == 1)
                angles.push_back(0.0);
            else
                for (std::size_t i = 0; i < angle_steps; ++i)
                    angles.push_back(deg_to_rad(-90.0 + 180.0 * static_cast<double>(i) / static_cast<double>(angle_steps - 1)));
            if (std::find(angles.begin(), angles.end(), theta_u) == angles.end())
                angles.push_back(theta_u);
            std::sort(angles.begin(), angles.end());

            const auto mrt = mrt_phases(s.array, theta_u).realize();
            const auto ttd = full_ttd_delays(s.array, theta_u);
            const auto wbbg = wbbg_optimize(s.array, s.grid, theta_u, rc.wbbg).weights.realize();

            std::ostringstream csv;
            csv << "angle_deg,bf,architecture,gain\n";
            for (double b : offsets)
            {
                const auto ttd_b = ttd.realize(s.array, b);
                const std::pair<const char *, const ComplexWeightVector *> weights[] = {
                    {"MRT", &mrt}, {"FullTTD", &ttd_b}, {"WBBG", &wbbg}};
                for (const auto &[name, w] : weights)
                    for (double theta : angles)
                        csv << sci(rad_to_deg(theta)) << "," << sci(b) << "," << name << ","
                            << sci(array_gain(*w, s.array, b, theta)) << "\n";
            }
            return csv.str();
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Beam squint analysis for wideband hybrid beamformers", "squint"};
        app.set_version_flag("--version", tool_version());
        app.require_subcommand(1);

        unsigned workers = 0;

        // sweep
        Common sweep_c;
        double sweep_min = 0.01, sweep_max = 0.3;
        std::size_t sweep_steps = 20;
        auto *sweep = app.add_subcommand("sweep", "Sum spectral efficiency of every architecture versus B/f0");
        add_common(sweep, sweep_c, true);
        sweep->add_option("--bf-min", sweep_min, "Smallest fractional bandwidth");
        sweep->add_option("--bf-max", sweep_max, "Largest fractional bandwidth");
        sweep->add_option("--bf-steps", sweep_steps, "Number of points, endpoints included");
        sweep->add_option("--workers", workers, "Worker threads (default: SQUINT_WORKERS, else all cores)");

        // pattern
        Common pattern_c;
        std::vector<double> pattern_offsets{0.0};
        std::size_t angle_steps = 721;
        auto *pattern = app.add_subcommand("pattern", "Gain versus angle per carrier for MRT, Full-TTD and WBBG weights");
        add_common(pattern, pattern_c, true);
        pattern->add_option("--bf", pattern_offsets, "Carrier offsets (f - f0)/f0, comma separated")->delimiter(',');
        pattern->add_option("--angle-steps", angle_steps, "Angles in [-90, 90] deg; the target angle is always added");

        // cost
        Common cost_c;
        double cost_min = 0.0, cost_max = 1.0;
        std::size_t cost_steps = 101;
        auto *cost = app.add_subcommand("cost", "Hardware cost of each architecture versus B/f0");
        add_common(cost, cost_c, false);
        cost->add_option("--bf-min", cost_min, "Smallest fractional bandwidth");
        cost->add_option("--bf-max", cost_max, "Largest fractional bandwidth");
        cost->add_option("--bf-steps", cost_steps, "Number of points, endpoints included");

        // advise
        Common advise_c;
        double perf_weight = 0.5;
        std::string json_path;
        auto *advise_cmd = app.add_subcommand("advise", "Recommend an architecture for the scenario's B/f0");
        add_common(advise_cmd, advise_c, true);
        advise_cmd->add_option("--perf-weight", perf_weight, "Weight of performance; cost gets 1 - w")
            ->check(CLI::Range(0.0, 1.0));
        advise_cmd->add_option("--json", json_path, "Also write the machine-readable record here");

        // atm
        double f_min = 1.0, f_max = 350.0, f_step = 0.0;
        std::string table_path;
        std::string atm_out;
        auto *atm = app.add_subcommand("atm", "Dump a slice of the specific attenuation table");
        atm->add_option("--f-min", f_min, "Lowest frequency, GHz");
        atm->add_option("--f-max", f_max, "Highest frequency, GHz");
        atm->add_option("--step", f_step, "Resample step in GHz (0: table nodes)");
        atm->add_option("--table", table_path, "Table file instead of the bundled one")->check(CLI::ExistingFile);
        atm->add_option("-o,--out", atm_out, "Output file");

        // devices
        std::string catalog_path, kind_filter;
        auto *devices = app.add_subcommand("devices", "List the wideband PS/TTD device catalog");
        devices->add_option("--catalog", catalog_path, "Catalog file instead of the bundled one")->check(CLI::ExistingFile);
        devices->add_option("--kind", kind_filter, "PS or TTD")->check(CLI::IsMember({"PS", "TTD"}));

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_config_error;
        }

        const std::string command = join_command(args);
        try
        {
            if (*sweep)
            {
                const auto rc = resolve_config(sweep_c);
                const auto grid = bf_grid(sweep_min, sweep_max, sweep_steps);
                SweepOptions opts;
                opts.wbbg = rc.wbbg;
                opts.workers = workers;
                const auto rows = sweep_fractional_bandwidth(rc.scenario, grid, opts);
                std::ostringstream csv;
                write_sweep_csv(csv, rows);
                emit(sweep_c, command, &rc, csv.str(), out);
            }
            else if (*pattern)
            {
                const auto rc = resolve_config(pattern_c);
                if (angle_steps == 0)
                    throw ConfigError("empty grid: --angle-steps must be >= 1");
                for (double b : pattern_offsets)
                    if (!(std::abs(b) < 1.0))
                        throw ConfigError("carrier offset " + format_double(b) + " outside (-1, 1)");
                emit(pattern_c, command, &rc, pattern_csv(rc, pattern_offsets, angle_steps), out);
            }
            else if (*cost)
            {
                const auto rc = resolve_config(cost_c);
                const auto grid = bf_grid(cost_min, cost_max, cost_steps);
                if (grid.front() < 0.0)
                    throw ConfigError("fractional bandwidth must be >= 0");
                const auto rows = sweep_cost(rc.scenario.array, rc.advisor.n_rf,
                                             rc.advisor.sparse_ttd_count(rc.scenario.array), rc.advisor.model, grid);
                std::ostringstream csv;
                write_cost_csv(csv, rows);
                emit(cost_c, command, &rc, csv.str(), out);
            }
            else if (*advise_cmd)
            {
                const auto rc = resolve_config(advise_c);
                const auto rec = advise_scenario(rc.scenario, perf_weight, 1.0 - perf_weight, rc.advisor);
                std::ostringstream report;
                write_recommendation_report(report, rec);
                emit(advise_c, command, &rc, report.str(), out);
                if (!advise_c.out_path.empty())
                    out << report.str();
                if (!json_path.empty())
                {
                    std::ofstream file(json_path, std::ios::binary);
                    if (!file)
                        throw ComputeError("cannot write '" + json_path + "'");
                    file << recommendation_json(rec) << "\n";
                }
            }
            else if (*atm)
            {
                std::optional<AttenuationTable> own;
                if (!table_path.empty())
                {
                    std::ifstream in(table_path);
                    own = AttenuationTable::parse(in);
                }
                const AttenuationTable &table = own ? *own : AttenuationTable::bundled();
                if (!(f_min <= f_max))
                    throw ConfigError("--f-min must not exceed --f-max");
                if (f_step < 0.0)
                    throw ConfigError("--step must be >= 0");

                std::ostringstream csv;
                csv << "frequency_ghz,attenuation_db_per_km\n";
                if (f_step == 0.0)
                {
                    const auto &f = table.frequencies_ghz();
                    const auto &a = table.values_db_per_km();
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (f[i] >= f_min && f[i] <= f_max)
                            csv << format_double(f[i]) << "," << format_double(a[i]) << "\n";
                }
                else
                {
                    const auto n = static_cast<std::size_t>(std::floor((f_max - f_min) / f_step + 1e-9));
                    for (std::size_t i = 0; i <= n; ++i)
                    {
                        const double f = f_min + f_step * static_cast<double>(i);
                        csv << format_double(f) << "," << format_double(table.at_ghz(f)) << "\n";
                    }
                }
                Common c;
                c.out_path = atm_out;
                emit(c, command, nullptr, csv.str(), out);
            }
            else if (*devices)
            {
                std::vector<DeviceSpec> own;
                if (!catalog_path.empty())
                {
                    std::ifstream in(catalog_path);
                    own = load_device_catalog(in);
                }
                const auto &catalog = catalog_path.empty() ? bundled_device_catalog() : own;
                char line[200];
                std::snprintf(line, sizeof(line), "%-26s %-4s %-10s %-14s %-12s %s\n", "name", "kind", "resolution",
                              "band_ghz", "loss_db", "max_error");
                out << line;
                for (const auto &d : catalog)
                {
                    const bool is_ps = d.kind == DeviceKind::phase_shifter;
                    if (!kind_filter.empty() && (kind_filter == "PS") != is_ps)
                        continue;
                    const std::string bits = d.resolution_bits ? std::to_string(*d.resolution_bits) + " bit" : "cont.";
                    const std::string band = format_double(d.freq_min_hz / 1e9) + "-" + format_double(d.freq_max_hz / 1e9);
                    const std::string loss = format_double(d.loss_min_db) + "-" + format_double(d.loss_max_db);
                    std::string error = "NA";
                    if (is_ps && d.max_phase_error_deg)
                        error = format_double(*d.max_phase_error_deg) + " deg";
                    else if (!is_ps && d.max_delay_error_s)
                        error = format_double(*d.max_delay_error_s * 1e12) + " ps";
                    std::snprintf(line, sizeof(line), "%-26s %-4s %-10s %-14s %-12s %s\n", d.name.c_str(),
                                  is_ps ? "PS" : "TTD", bits.c_str(), band.c_str(), loss.c_str(), error.c_str());
                    out << line;
                }
            }
        }
        catch (const std::invalid_argument &e)
        {
            err << "squint: configuration error: " << e.what() << "\n";
            return exit_config_error;
        }
        catch (const std::exception &e)
        {
            err << "squint: error: " << e.what() << "\n";
            return exit_runtime_error;
        }
        return exit_ok;
    }
}
