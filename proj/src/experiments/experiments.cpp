// SPDX-License-Identifier: Apache-2.0
//
// rzf-loading: asymptotic SLNR analysis and user-loading optimization for RZF precoding
// Copyright (C) 2026 The rzf-loading authors
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

#include "rzf/asymptotic.hpp"
#include "rzf/errors.hpp"
#include "rzf/experiments.hpp"
#include "rzf/loading.hpp"
#include "rzf/precoding.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#ifndef RZF_VERSION
#define RZF_VERSION "0.0.0"
#endif

namespace rzf
{
    namespace
    {
        using clock_type = std::chrono::steady_clock;

        double seconds_since(clock_type::time_point start)
        {
            return std::chrono::duration<double>(clock_type::now() - start).count();
        }

        std::string fmt(double v)
        {
            // Shortest text that reads back to the same double
            char buf[32];
            const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
            return std::string(buf, end);
        }

        std::string join(std::span<const double> values)
        {
            std::string out;
            for (std::size_t i = 0; i < values.size(); ++i)
                out += (i ? "," : "") + fmt(values[i]);
            return out;
        }

        double mean(std::span<const double> v)
        {
            return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        }

        double stddev(std::span<const double> v)
        {
            if (v.size() < 2)
                return 0.0;
            const double m = mean(v);
            double s = 0.0;
            for (double x : v)
                s += (x - m) * (x - m);
            return std::sqrt(s / static_cast<double>(v.size() - 1));
        }
    }

    std::string_view library_version()
    {
        return RZF_VERSION;
    }

    cdf_series empirical_cdf(std::vector<double> samples)
    {
        std::sort(samples.begin(), samples.end());
        cdf_series out;
        const double n = static_cast<double>(samples.size());
        out.levels.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.levels[i] = static_cast<double>(i + 1) / (n + 1.0);
        out.values = std::move(samples);
        return out;
    }

    double quantile_sorted(std::span<const double> sorted, double p)
    {
        if (sorted.empty())
            throw dimension_error("quantile_sorted: empty sample");
        if (!(p >= 0.0 && p <= 1.0))
            throw parameter_error("quantile_sorted: p must lie in [0, 1]");
        const double pos = p * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    }

    double median(std::vector<double> samples)
    {
        std::sort(samples.begin(), samples.end());
        return quantile_sorted(samples, 0.5);
    }

    std::vector<double> linear_grid(double start, double stop, double step)
    {
        if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
            throw parameter_error("grid: need start <= stop and step > 0");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-6)) + 1;
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = start + static_cast<double>(i) * step;
        return out;
    }

    experiment_result run_cdf_experiment(const system_config &config)
    {
        const auto start = clock_type::now();
        config.validate();
        if (config.profile.kind != correlation_kind::identity)
            throw parameter_error("profile: the CDF experiment requires the identity profile");

        const std::size_t k = config.k();
        const double eta = config.eta();
        const channel_sampler sampler(config);

        // Trials write into disjoint slices, so the pooled order is fixed by trial index
        std::vector<double> slnr(config.trials * k), sinr(config.trials * k);
        for (std::size_t t = 0; t < config.trials; ++t)
        {
            const auto m = evaluate_metrics(sampler.sample(t).h, eta);
            std::copy(m.slnr.begin(), m.slnr.end(), slnr.begin() + static_cast<std::ptrdiff_t>(t * k));
            std::copy(m.sinr.begin(), m.sinr.end(), sinr.begin() + static_cast<std::ptrdiff_t>(t * k));
        }

        const double gamma = gamma_uncorrelated(static_cast<double>(config.n()) / static_cast<double>(k), eta);
        auto slnr_cdf = empirical_cdf(std::move(slnr));
        auto sinr_cdf = empirical_cdf(std::move(sinr));

        experiment_result res;
        res.name = "sweep-cdf";
        res.metadata.emplace_back("version", std::string(library_version()));
        for (auto &kv : config.to_key_values())
            res.metadata.push_back(std::move(kv));
        res.metadata.emplace_back("gamma", fmt(gamma));

        const std::size_t rows = slnr_cdf.values.size();
        res.add_column("level", std::move(slnr_cdf.levels));
        res.add_column("slnr", std::move(slnr_cdf.values));
        res.add_column("sinr", std::move(sinr_cdf.values));
        res.add_column("gamma", std::vector<double>(rows, gamma));
        res.wall_seconds = seconds_since(start);
        return res;
    }

    experiment_result run_correlation_sweep(const correlation_sweep_options &options)
    {
        const auto start = clock_type::now();
        if (options.n == 0)
            throw parameter_error("n: antenna count must be at least 1");
        if (!(options.alpha > 0.0 && options.alpha <= 1.0))
            throw parameter_error("alpha: user loading must lie in (0, 1]");
        if (options.theta_draws == 0)
            throw parameter_error("draws: need at least one random-theta draw");
        if (options.rho_grid.empty())
            throw parameter_error("rho-grid: empty grid");

        const std::size_t n = options.n;
        const auto k = static_cast<std::size_t>(std::llround(options.alpha * static_cast<double>(n)));
        if (k == 0)
            throw parameter_error("alpha: alpha * n rounds to zero users");
        const double eta = std::pow(10.0, -options.snr_db / 10.0);
        const double x = static_cast<double>(n) / static_cast<double>(k);
        const double uncorrelated = gamma_uncorrelated(x, eta);

        fixed_point_options fp;
        fp.tol = options.tol;
        fp.max_iter = options.max_iter;

        std::vector<double> col_even, col_random, col_draw_sd, col_user_sd, col_common;
        for (double rho : options.rho_grid)
        {
            correlation_profile profile{correlation_kind::exponential_even_theta, rho, options.common_theta, n, k};
            profile.validate();

            const auto even = solve_fixed_point(build_correlations(profile, options.seed), eta, fp);
            col_even.push_back(mean(even.gamma));

            profile.kind = correlation_kind::exponential_random_theta;
            std::vector<double> draw_means, draw_sds;
            for (std::size_t d = 0; d < options.theta_draws; ++d)
            {
                const auto sol = solve_fixed_point(build_correlations(profile, substream_seed(options.seed, d)), eta, fp);
                draw_means.push_back(mean(sol.gamma));
                draw_sds.push_back(stddev(sol.gamma));
            }
            col_random.push_back(mean(draw_means));
            col_draw_sd.push_back(stddev(draw_means));
            col_user_sd.push_back(mean(draw_sds));

            profile.kind = correlation_kind::exponential_common_theta;
            std::mt19937_64 unused(0);
            const auto lambda = herm_eigenvalues(build_correlation(profile, 0, unused));
            col_common.push_back(gamma_common_r(lambda, k, eta, options.tol, options.max_iter));
        }

        experiment_result res;
        res.name = "sweep-correlation";
        res.metadata = {{"version", std::string(library_version())},
                        {"n", std::to_string(n)},
                        {"k", std::to_string(k)},
                        {"alpha", fmt(options.alpha)},
                        {"snr-db", fmt(options.snr_db)},
                        {"theta", fmt(options.common_theta)},
                        {"draws", std::to_string(options.theta_draws)},
                        {"seed", std::to_string(options.seed)},
                        {"tol", fmt(options.tol)},
                        {"rho-grid", join(options.rho_grid)}};
        res.add_column("rho", options.rho_grid);
        res.add_column("gamma_uncorrelated", std::vector<double>(options.rho_grid.size(), uncorrelated));
        res.add_column("gamma_even", std::move(col_even));
        res.add_column("gamma_random", std::move(col_random));
        res.add_column("gamma_random_draw_sd", std::move(col_draw_sd));
        res.add_column("gamma_random_user_sd", std::move(col_user_sd));
        res.add_column("gamma_common", std::move(col_common));
        res.wall_seconds = seconds_since(start);
        return res;
    }

    experiment_result run_loading_sweep(std::span<const double> snr_db_grid, double tol, double brute_step)
    {
        const auto start = clock_type::now();
        if (snr_db_grid.empty())
            throw parameter_error("snr grid: empty grid");

        const double eta_o = eta_threshold();
        const double nan = std::numeric_limits<double>::quiet_NaN();

        std::vector<double> col_eta, col_x, col_alpha, col_brute, col_low, col_high, col_clamped;
        for (double snr : snr_db_grid)
        {
            if (!std::isfinite(snr))
                throw parameter_error("snr grid: non-finite SNR value");
            const double eta = std::pow(10.0, -snr / 10.0);
            const auto sol = optimal_x_exact(eta, tol);

            col_eta.push_back(eta);
            col_x.push_back(sol.x_star);
            col_alpha.push_back(sol.alpha_star);
            col_brute.push_back(1.0 / optimal_x_grid(eta, 1.0, 1.5, brute_step));
            col_clamped.push_back(sol.method == loading_method::clamped_at_one ? 1.0 : 0.0);

            double low = nan, high = nan;
            if (eta <= eta_o)
            {
                try
                {
                    low = 1.0 / optimal_x_low_snr(eta);
                }
                catch (const parameter_error &)
                {
                    // outside the approximation's regime: leave NaN
                }
                high = 1.0 / optimal_x_high_snr(eta);
            }
            col_low.push_back(low);
            col_high.push_back(high);
        }

        experiment_result res;
        res.name = "sweep-loading";
        res.metadata = {{"version", std::string(library_version())},
                        {"tol", fmt(tol)},
                        {"brute-step", fmt(brute_step)},
                        {"eta-threshold", fmt(eta_o)},
                        {"snr-grid", join(snr_db_grid)}};
        res.add_column("snr_db", std::vector<double>(snr_db_grid.begin(), snr_db_grid.end()));
        res.add_column("eta", std::move(col_eta));
        res.add_column("x_exact", std::move(col_x));
        res.add_column("alpha_exact", std::move(col_alpha));
        res.add_column("alpha_brute", std::move(col_brute));
        res.add_column("alpha_low", std::move(col_low));
        res.add_column("alpha_high", std::move(col_high));
        res.add_column("clamped", std::move(col_clamped));
        res.wall_seconds = seconds_since(start);
        return res;
    }
}
