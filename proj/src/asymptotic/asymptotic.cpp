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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace rzf
{
    namespace
    {
        std::string format_sci(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", v);
            return buf;
        }

        void require_eta(double eta, const char *op)
        {
            if (!(eta > 0.0) || !std::isfinite(eta))
                throw parameter_error(std::string(op) + ": eta must be positive and finite");
        }

        // One sweep gamma_k <- Tr(R_k A^{-1}), A = sum_j R_j / (1 + gamma_j) + K eta I
        void sweep_dense(std::span<const hermitian_matrix> r, double k_eta, const std::vector<double> &gamma,
                         std::vector<double> &next)
        {
            const std::size_t n = r.front().dim();
            complex_matrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                a(i, i) = k_eta;
            for (std::size_t j = 0; j < r.size(); ++j)
            {
                const double w = 1.0 / (1.0 + gamma[j]);
                for (std::size_t c = 0; c < n; ++c)
                {
                    const auto src = r[j].matrix().col(c).subspan(c);
                    auto dst = a.col(c).subspan(c);
                    for (std::size_t i = 0; i < src.size(); ++i)
                        dst[i] += w * src[i];
                }
            }
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t row = c + 1; row < n; ++row)
                    a(c, row) = std::conj(a(row, c));

            const hermitian_matrix a_inv = cholesky_factor(hermitian_matrix::symmetrize(std::move(a))).inverse();
            for (std::size_t k = 0; k < r.size(); ++k)
                next[k] = trace_product(r[k], a_inv);
        }

        void sweep_diagonal(const std::vector<std::vector<double>> &diag, double k_eta, const std::vector<double> &gamma,
                            std::vector<double> &next)
        {
            const std::size_t n = diag.front().size();
            std::vector<double> a(n, k_eta);
            for (std::size_t j = 0; j < diag.size(); ++j)
            {
                const double w = 1.0 / (1.0 + gamma[j]);
                for (std::size_t i = 0; i < n; ++i)
                    a[i] += w * diag[j][i];
            }
            for (std::size_t k = 0; k < diag.size(); ++k)
            {
                double t = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    t += diag[k][i] / a[i];
                next[k] = t;
            }
        }
    }

    asymptotic_solution solve_fixed_point(std::span<const hermitian_matrix> r, double eta,
                                          const fixed_point_options &options)
    {
        require_eta(eta, "solve_fixed_point");
        if (r.empty())
            throw dimension_error("solve_fixed_point: no correlation matrices");
        const std::size_t n = r.front().dim();
        for (std::size_t k = 1; k < r.size(); ++k)
            if (r[k].dim() != n)
                throw dimension_error("solve_fixed_point: R_" + std::to_string(k) + " has dimension " +
                                      std::to_string(r[k].dim()) + ", expected " + std::to_string(n));
        if (!(options.damping >= 0.0 && options.damping < 1.0))
            throw parameter_error("solve_fixed_point: damping must lie in [0, 1)");
        if (!(options.tol > 0.0))
            throw parameter_error("solve_fixed_point: tol must be positive");

        const std::size_t users = r.size();
        const double k_eta = static_cast<double>(users) * eta;

        asymptotic_solution sol;
        sol.gamma.assign(users, 0.0);
        if (!options.initial.empty())
        {
            if (options.initial.size() != users)
                throw dimension_error("solve_fixed_point: initial guess must have K entries");
            for (double g : options.initial)
                if (!(g >= 0.0))
                    throw parameter_error("solve_fixed_point: initial guess must be nonnegative");
            sol.gamma = options.initial;
        }

        const bool diagonal = options.exploit_diagonal &&
                              std::all_of(r.begin(), r.end(), [](const hermitian_matrix &m)
                                          { return m.is_diagonal(); });
        std::vector<std::vector<double>> diag;
        if (diagonal)
        {
            diag.assign(users, std::vector<double>(n));
            for (std::size_t k = 0; k < users; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    diag[k][i] = r[k](i, i).real();
        }

        std::vector<double> next(users);
        for (std::size_t it = 1; it <= options.max_iter; ++it)
        {
            if (diagonal)
                sweep_diagonal(diag, k_eta, sol.gamma, next);
            else
                sweep_dense(r, k_eta, sol.gamma, next);

            double delta = 0.0, scale = 0.0;
            for (std::size_t k = 0; k < users; ++k)
            {
                const double g = (1.0 - options.damping) * next[k] + options.damping * sol.gamma[k];
                delta = std::max(delta, std::abs(g - sol.gamma[k]));
                scale = std::max(scale, sol.gamma[k]);
                sol.gamma[k] = g;
            }
            sol.iterations = it;
            sol.residual = delta;
            if (!std::isfinite(delta))
                throw numerical_error("solve_fixed_point: iteration diverged to a non-finite value");
            if (delta <= options.tol * (1.0 + scale))
            {
                sol.converged = true;
                return sol;
            }
        }
        throw convergence_error("solve_fixed_point: no convergence after " + std::to_string(options.max_iter) +
                                    " iterations (last residual " + format_sci(sol.residual) + ")",
                                options.max_iter, sol.residual);
    }

    double gamma_uncorrelated(double x, double eta)
    {
        if (!(x > 0.0) || !std::isfinite(x))
            throw parameter_error("gamma_uncorrelated: x must be positive and finite");
        require_eta(eta, "gamma_uncorrelated");

        const double b = eta - x + 1.0;
        const double root = std::sqrt(b * b + 4.0 * eta * x);
        // b > 0: -b + root cancels, use the conjugate form 2x / (b + root)
        if (b > 0.0)
            return 2.0 * x / (b + root);
        return (root - b) / (2.0 * eta);
    }

    double gamma_common_r(std::span<const double> eigenvalues, std::size_t k, double eta, double tol,
                          std::size_t max_iter)
    {
        require_eta(eta, "gamma_common_r");
        if (k == 0)
            throw parameter_error("gamma_common_r: K must be at least 1");
        if (eigenvalues.empty())
            throw dimension_error("gamma_common_r: no eigenvalues");

        const double n = static_cast<double>(eigenvalues.size());
        double sum = 0.0;
        for (double l : eigenvalues)
        {
            if (!(l >= 0.0) || !std::isfinite(l))
                throw parameter_error("gamma_common_r: eigenvalues must be nonnegative and finite");
            sum += l;
        }
        if (std::abs(sum - n) > 1e-6 * n)
            throw parameter_error("gamma_common_r: eigenvalues must sum to N (trace normalization), got " +
                                  std::to_string(sum));

        const double kd = static_cast<double>(k);
        double gamma = 0.0, delta = 0.0;
        for (std::size_t it = 1; it <= max_iter; ++it)
        {
            const double a = kd / (1.0 + gamma);
            double next = 0.0;
            for (double l : eigenvalues)
                if (l > 0.0)
                    next += l / (a * l + kd * eta);
            delta = std::abs(next - gamma);
            const double scale = gamma;
            gamma = next;
            if (delta <= tol * (1.0 + scale))
                return gamma;
        }
        throw convergence_error("gamma_common_r: no convergence after " + std::to_string(max_iter) + " iterations",
                                max_iter, delta);
    }

    common_r_bound common_r_bound_check(std::span<const double> eigenvalues, std::size_t k, double eta, double tol)
    {
        common_r_bound out;
        out.gamma = gamma_common_r(eigenvalues, k, eta, tol);
        out.bound = gamma_uncorrelated(static_cast<double>(eigenvalues.size()) / static_cast<double>(k), eta);
        out.holds = out.gamma <= out.bound + 1e-10;
        return out;
    }
}
