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

#ifndef RZF_LOADING_HPP
#define RZF_LOADING_HPP

#include <string_view>

namespace rzf
{
    // Principal branch W0 of the Lambert W function (w e^w = z), z >= -1/e.
    // Halley iteration; residual |W e^W - z| <= 1e-12 max(1, |z|).
    // Throws parameter_error below the branch point.
    double lambert_w0(double z);

    enum class loading_method
    {
        exact_root_find,
        clamped_at_one,
        low_snr_approx,
        high_snr_approx
    };

    std::string_view to_string(loading_method method);

    // Optimum of the per-antenna rate f(x, eta) over x = N / K >= 1
    struct loading_solution
    {
        double x_star = 1.0;
        double alpha_star = 1.0; // K / N = 1 / x_star
        double objective = 0.0;  // f(x_star, eta), nats
        loading_method method = loading_method::exact_root_find;
        double eta = 0.0;
    };

    // f(x, eta) = ln(1 + gamma(x, eta)) / x with gamma the uncorrelated
    // deterministic SLNR. Defined for x > 0; the loading problem uses x >= 1.
    double objective_f(double x, double eta);

    // Closed-form df/dx:
    //   1 / (x sqrt((x + eta - 1)^2 + 4 eta))
    //     - ln((x + eta - 1 + sqrt((x + eta - 1)^2 + 4 eta)) / (2 eta)) / x^2
    double dfdx(double x, double eta);

    // df/dx has a single sign change, so: x* = 1 when df/dx(1) <= 0,
    // otherwise bisection on [1, 6 sqrt(3) - 9] down to an interval of `tol`.
    loading_solution optimal_x_exact(double eta, double tol = 1e-12);

    // Brute-force argmax of objective_f on the grid lo, lo + step, ..., hi
    double optimal_x_grid(double eta, double lo = 1.0, double hi = 1.5, double step = 1e-4);

    // Low-SNR closed-form approximation, valid for 0 < eta <= eta_o:
    //   x* ~ c + sqrt(c^2 - (1 - 2c)(eta + 3)),
    //   c = 1 - sqrt(eta^2 + 4 eta) ln((eta + sqrt(eta^2 + 4 eta)) / (2 eta)) / 2
    double optimal_x_low_snr(double eta);

    // High-SNR approximation x* ~ 1 - eta + eta e^{1 + W0((1 - eta) / (eta e))}, 0 < eta < 1
    double optimal_x_high_snr(double eta);

    // Noise level above which full loading (x* = 1) is optimal: root of
    // sqrt(eta^2 + 4 eta) ln((eta + sqrt(eta^2 + 4 eta)) / (2 eta)) = 1.
    // Computed once and cached.
    double eta_threshold();

    // 6 sqrt(3) - 9: x* stays below this for every eta
    double x_star_loose_bound();

    struct loading_constants
    {
        double eta_o = 0.0;
        double x_ub_tight = 0.0;       // max over eta of x*(eta)
        double eta_at_x_ub = 0.0;      // where the max is attained
        double x_ub_loose = 0.0;
        double snr_threshold_db = 0.0; // 10 log10(1 / eta_o)
    };

    // All derived, none hard-coded. x_ub_tight comes from a golden-section
    // search of optimal_x_exact over log(eta) in [1e-8, eta_o].
    loading_constants compute_loading_constants();
}

#endif
