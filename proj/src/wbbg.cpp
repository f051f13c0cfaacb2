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

// Wideband beam-gain (max-min) design for phase-only weights.
//
// The hard objective min_m |a_m^H w| is replaced by a softmin of the log power gains
//   f_t(w) = -(1/t) log sum_m exp(-t log|a_m^H w|^2),
// which is smooth and tends to the hard minimum as t grows. Each restart anneals t over a
// fixed schedule; within a stage we take Riemannian gradient steps on the torus |w_n| = 1
// (tangent projection, step, then per-entry normalization) with a backtracking step size.
// The best hard min-gain iterate seen anywhere is kept, so the MRT warm start guarantees
// the result is never worse than MRT.

#include "squint/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

namespace squint
{
    namespace
    {
        constexpr int n_stages = 8;
        constexpr double t_first = 2.0;
        constexpr double t_last = 2000.0;
        constexpr double min_step = 1e-10;

        struct Problem
        {
            std::size_t n_elements = 0;
            std::size_t n_carriers = 0;
            std::vector<complex_t> steering; // a_m, row-major [carrier][element]
        };

        struct RestartResult
        {
            ComplexWeightVector best;
            int iterations = 0;
            bool converged = false;
        };

        // c_m = a_m^H w
        void project_gains(const Problem &p, const std::vector<complex_t> &w, std::vector<complex_t> &c)
        {
            c.assign(p.n_carriers, complex_t(0.0));
            for (std::size_t m = 0; m < p.n_carriers; ++m)
            {
                const complex_t *a = p.steering.data() + m * p.n_elements;
                complex_t acc = 0.0;
                for (std::size_t n = 0; n < p.n_elements; ++n)
                    acc += std::conj(a[n]) * w[n];
                c[m] = acc;
            }
        }

        double hard_min_power(const std::vector<complex_t> &c)
        {
            double q = std::numeric_limits<double>::infinity();
            for (const auto &cm : c)
                q = std::min(q, std::norm(cm));
            return q;
        }

        // Softmin of log power gains; also fills the softmin weights p_m.
        double smooth_objective(const std::vector<complex_t> &c, double t, std::vector<double> *weights)
        {
            constexpr double floor = 1e-300;
            std::vector<double> ell(c.size());
            double ell_min = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < c.size(); ++m)
            {
                ell[m] = std::log(std::norm(c[m]) + floor);
                ell_min = std::min(ell_min, ell[m]);
            }
            double z = 0.0;
            for (std::size_t m = 0; m < c.size(); ++m)
            {
                const double e = std::exp(-t * (ell[m] - ell_min));
                z += e;
                if (weights)
                    (*weights)[m] = e;
            }
            if (weights)
                for (double &pm : *weights)
                    pm /= z;
            return ell_min - std::log(z) / t;
        }

        void normalize(std::vector<complex_t> &w)
        {
            for (auto &x : w)
            {
                const double r = std::abs(x);
                x = r > 0.0 ? x / r : complex_t(1.0);
            }
        }

        RestartResult run_restart(const Problem &p, std::vector<complex_t> w, const WbbgOptions &opts)
        {
            const std::size_t N = p.n_elements;
            const std::size_t K = p.n_carriers;
            const int iters_per_stage = std::max(1, opts.max_iters / n_stages);

            std::vector<complex_t> c, c_trial, grad(N), trial(N);
            std::vector<double> softw(K);

            project_gains(p, w, c);
            RestartResult out;
            out.best.entries = w;
            double best_q = hard_min_power(c);

            double step = 0.2;
            bool stage_converged = false;

            for (int stage = 0; stage < n_stages; ++stage)
            {
                const double t = t_first * std::pow(t_last / t_first, static_cast<double>(stage) / (n_stages - 1));
                double f = smooth_objective(c, t, &softw);
                stage_converged = false;

                for (int it = 0; it < iters_per_stage; ++it)
                {
                    ++out.iterations;

                    // Euclidean gradient w.r.t. conj(w): sum_m p_m a_m c_m / |c_m|^2
                    std::fill(grad.begin(), grad.end(), complex_t(0.0));
                    for (std::size_t m = 0; m < K; ++m)
                    {
                        const double q = std::norm(c[m]);
                        if (q <= 0.0 || softw[m] == 0.0)
                            continue;
                        const complex_t coef = softw[m] * c[m] / q;
                        const complex_t *a = p.steering.data() + m * N;
                        for (std::size_t n = 0; n < N; ++n)
                            grad[n] += a[n] * coef;
                    }
                    // Tangent space of the torus at w.
                    double norm2 = 0.0;
                    for (std::size_t n = 0; n < N; ++n)
                    {
                        grad[n] -= std::real(grad[n] * std::conj(w[n])) * w[n];
                        norm2 += std::norm(grad[n]);
                    }
                    if (!(norm2 > 0.0))
                    {
                        stage_converged = true;
                        break;
                    }
                    const double scale = std::sqrt(static_cast<double>(N) / norm2);

                    bool accepted = false;
                    double f_trial = f;
                    while (step >= min_step)
                    {
                        for (std::size_t n = 0; n < N; ++n)
                            trial[n] = w[n] + (step * scale) * grad[n];
                        normalize(trial);
                        project_gains(p, trial, c_trial);
                        f_trial = smooth_objective(c_trial, t, nullptr);
                        if (f_trial > f)
                        {
                            accepted = true;
                            break;
                        }
                        step *= 0.5;
                    }
                    if (!accepted)
                    {
                        step = 0.2;
                        stage_converged = true;
                        break;
                    }

                    w.swap(trial);
                    c.swap(c_trial);
                    const double improvement = f_trial - f;
                    f = smooth_objective(c, t, &softw);
                    step = std::min(step * 1.5, 1.0);

                    const double q = hard_min_power(c);
                    if (q > best_q)
                    {
                        best_q = q;
                        out.best.entries = w;
                    }
                    if (improvement <= opts.tolerance * std::max(1.0, std::abs(f)))
                    {
                        stage_converged = true;
                        break;
                    }
                }
            }
            out.converged = stage_converged;
            return out;
        }

        std::vector<complex_t> random_phases(std::size_t N, std::uint64_t seed, int restart)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(restart)};
            std::mt19937_64 rng(seq);
            std::vector<complex_t> w(N);
            for (auto &x : w)
            {
                // 53 random bits -> [0, 1); avoids implementation-defined distributions
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                x = std::polar(1.0, 2.0 * pi * u - pi);
            }
            return w;
        }

        std::vector<complex_t> initial_point(const ArrayConfig &cfg, double theta_u, double b_edge,
                                             const WbbgOptions &opts, int restart)
        {
            const std::size_t N = cfg.n_elements;
            auto mrt = mrt_phases(cfg, theta_u).realize().entries;
            if (restart == 0)
                return mrt;
            if (restart == 1)
            {
                // Quadratic phase across the aperture widens the main lobe to roughly the
                // squinted span: the local phase slope sweeps +-pi b_edge (2d/lambda) sin(theta_u).
                const double span = pi * b_edge * (2.0 * cfg.element_spacing_fraction) * std::abs(std::sin(theta_u));
                const double centre = 0.5 * static_cast<double>(N - 1);
                const double k = N > 1 ? span / static_cast<double>(N - 1) : 0.0;
                for (std::size_t n = 0; n < N; ++n)
                {
                    const double x = static_cast<double>(n) - centre;
                    mrt[n] *= std::polar(1.0, k * x * x);
                }
                return mrt;
            }
            return random_phases(N, opts.seed, restart);
        }
    }

    WbbgSolution wbbg_optimize(const ArrayConfig &cfg, const CarrierGrid &grid, double theta_u_rad,
                               const WbbgOptions &opts)
    {
        validate(cfg);
        validate(grid, cfg.center_frequency_hz);
        if (opts.restarts < 1)
            throw std::invalid_argument("wbbg_optimize: restarts must be >= 1");
        if (opts.max_iters < 0)
            throw std::invalid_argument("wbbg_optimize: max_iters must be >= 0");

        const auto offsets = carrier_offsets(grid, cfg.center_frequency_hz);
        const double b_edge = edge_offset(grid, cfg.center_frequency_hz);

        WbbgSolution sol;
        sol.seed = opts.seed;

        // Single effective carrier: max-min is plain max, which MRT attains.
        if (b_edge == 0.0 || cfg.n_elements == 1 || opts.max_iters == 0)
        {
            sol.weights = mrt_phases(cfg, theta_u_rad);
            sol.per_carrier_gain = per_carrier_gain(sol.weights, cfg, offsets, theta_u_rad);
            sol.min_gain = *std::min_element(sol.per_carrier_gain.begin(), sol.per_carrier_gain.end());
            sol.converged = true;
            return sol;
        }

        Problem problem;
        problem.n_elements = cfg.n_elements;
        problem.n_carriers = offsets.size();
        problem.steering.reserve(problem.n_elements * problem.n_carriers);
        for (double b : offsets)
        {
            const auto a = steering_vector(cfg, b, theta_u_rad);
            problem.steering.insert(problem.steering.end(), a.entries.begin(), a.entries.end());
        }

        std::vector<RestartResult> results(static_cast<std::size_t>(opts.restarts));
        const auto task = [&](int r) { return run_restart(problem, initial_point(cfg, theta_u_rad, b_edge, opts, r), opts); };
        if (opts.parallel && opts.restarts > 1)
        {
            std::vector<std::future<RestartResult>> futures;
            for (int r = 0; r < opts.restarts; ++r)
                futures.push_back(std::async(std::launch::async, task, r));
            for (int r = 0; r < opts.restarts; ++r)
                results[static_cast<std::size_t>(r)] = futures[static_cast<std::size_t>(r)].get();
        }
        else
        {
            for (int r = 0; r < opts.restarts; ++r)
                results[static_cast<std::size_t>(r)] = task(r);
        }

        // Highest min gain wins; ties go to the lowest restart index.
        bool have_best = false;
        for (int r = 0; r < opts.restarts; ++r)
        {
            const auto &res = results[static_cast<std::size_t>(r)];
            sol.iterations += res.iterations;

            auto weights = PhaseOnlyWeights::from_complex(res.best);
            auto gains = per_carrier_gain(weights, cfg, offsets, theta_u_rad);
            const double min_gain = *std::min_element(gains.begin(), gains.end());
            if (!have_best || min_gain > sol.min_gain)
            {
                have_best = true;
                sol.weights = std::move(weights);
                sol.per_carrier_gain = std::move(gains);
                sol.min_gain = min_gain;
                sol.converged = res.converged;
                sol.best_restart = r;
            }
        }
        return sol;
    }
}
