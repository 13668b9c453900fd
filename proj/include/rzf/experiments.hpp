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

#ifndef RZF_EXPERIMENTS_HPP
#define RZF_EXPERIMENTS_HPP

#include "rzf/channel.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rzf
{
    std::string_view library_version();

    // Named real-valued series of equal length plus the metadata needed to
    // rerun the experiment. Wall-clock time is kept out of the CSV so that
    // reruns are byte-identical.
    struct experiment_result
    {
        std::string name;
        std::vector<std::pair<std::string, std::string>> metadata;
        std::vector<std::string> column_names;
        std::vector<std::vector<double>> columns;
        double wall_seconds = 0.0;

        void add_column(std::string column_name, std::vector<double> values); // throws dimension_error on length mismatch
        const std::vector<double> &column(std::string_view column_name) const;
        std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    };

    // "# key = value" metadata lines, a header row, then one row per sample.
    // Doubles use %.17g; NaN is written as "nan".
    void write_csv(std::ostream &os, const experiment_result &result);
    void write_csv(const std::string &path, const experiment_result &result);

    struct cdf_series
    {
        std::vector<double> values; // sorted ascending
        std::vector<double> levels; // i / (n + 1), i = 1..n
    };

    cdf_series empirical_cdf(std::vector<double> samples);

    // Linear-interpolated quantile of an ascending sample, p in [0, 1]
    double quantile_sorted(std::span<const double> sorted, double p);
    double median(std::vector<double> samples);

    // Pools instantaneous SLNR and SINR over all users and trials of an
    // identity-profile configuration. Columns: level, slnr, sinr, gamma.
    experiment_result run_cdf_experiment(const system_config &config);

    struct correlation_sweep_options
    {
        std::size_t n = 128;
        double alpha = 0.75;
        double snr_db = 20.0;
        std::vector<double> rho_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        std::size_t theta_draws = 20; // random-theta draws averaged per rho
        double common_theta = 0.0;
        std::uint64_t seed = 1;
        double tol = 1e-10;
        std::size_t max_iter = 10000; // fixed-point iteration budget
    };

    // Asymptotic SLNR against rho for the three theta schemes.
    // Columns: rho, gamma_uncorrelated, gamma_even, gamma_random,
    // gamma_random_draw_sd, gamma_random_user_sd, gamma_common.
    // gamma_random is the user-mean per draw averaged over draws;
    // draw_sd spreads those per-draw means, user_sd is the mean within-draw
    // spread across users.
    experiment_result run_correlation_sweep(const correlation_sweep_options &options);

    // Optimal loading against SNR. Columns: snr_db, eta, x_exact, alpha_exact,
    // alpha_brute, alpha_low, alpha_high, clamped. alpha_low / alpha_high are
    // NaN where the approximation does not apply.
    experiment_result run_loading_sweep(std::span<const double> snr_db_grid, double tol = 1e-12,
                                        double brute_step = 1e-4);

    // start, start + step, ..., up to stop (inclusive within step / 1e6)
    std::vector<double> linear_grid(double start, double stop, double step);
}

#endif
