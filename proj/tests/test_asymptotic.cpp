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


#include <catch_amalgamated.hpp>

#include "rzf/asymptotic.hpp"
#include "rzf/channel.hpp"
#include "rzf/errors.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using rzf::hermitian_matrix;

namespace
{
    // Uncorrelated fixed point gamma = x / (1 / (1 + gamma) + eta), solved by bisection
    double uncorrelated_oracle(double x, double eta)
    {
        return rzf_test::bisect([&](double g) { return g - x / (1.0 / (1.0 + g) + eta); }, 0.0, x / eta + x + 1.0);
    }

    std::vector<double> exponential_eigenvalues(std::size_t n, double rho)
    {
        const rzf::correlation_profile p{rzf::correlation_kind::exponential_common_theta, rho, 0.0, n, 1};
        return rzf::herm_eigenvalues(rzf::build_correlations(p, 1)[0]);
    }
}

TEST_CASE("asymptotic - gamma_uncorrelated")
{
    CHECK_THAT(rzf::gamma_uncorrelated(1.0, 1.0), WithinRel((std::sqrt(5.0) - 1.0) / 2.0, 1e-15));
    CHECK_THAT(rzf::gamma_uncorrelated(2.0, 1e9), WithinRel(2e-9, 1e-8));

    for (double x : {0.1, 1.0, 1.3, 4.0, 10.0})
        for (double eta : {1e-6, 1e-3, 0.1, 1.0, 10.0, 1e4})
        {
            INFO("x " << x << ", eta " << eta);
            const double g = rzf::gamma_uncorrelated(x, eta);
            CHECK_THAT(g, WithinRel(x / (1.0 / (1.0 + g) + eta), 1e-12));
            CHECK_THAT(g, WithinRel(uncorrelated_oracle(x, eta), 1e-12));
        }

    CHECK_THROWS_AS(rzf::gamma_uncorrelated(0.0, 1.0), rzf::parameter_error);
    CHECK_THROWS_AS(rzf::gamma_uncorrelated(1.0, 0.0), rzf::parameter_error);
}

TEST_CASE("asymptotic - fixed point with identity correlations")
{
    SECTION("N = K, eta = 1: golden ratio")
    {
        const std::vector<hermitian_matrix> r(6, hermitian_matrix::identity(6));
        for (double g : rzf::solve_fixed_point(r, 1.0).gamma)
            CHECK_THAT(g, WithinRel((std::sqrt(5.0) - 1.0) / 2.0, 1e-10));
    }
    SECTION("matches the closed form, diagonal and dense routes")
    {
        for (auto [n, k] : {std::pair{8u, 8u}, std::pair{24u, 8u}, std::pair{13u, 5u}})
            for (double eta : {1e-4, 0.01, 1.0, 10.0})
            {
                INFO("N " << n << ", K " << k << ", eta " << eta);
                const std::vector<hermitian_matrix> r(k, hermitian_matrix::identity(n));
                const double want = rzf::gamma_uncorrelated(static_cast<double>(n) / k, eta);

                const auto fast = rzf::solve_fixed_point(r, eta);
                rzf::fixed_point_options dense;
                dense.exploit_diagonal = false;
                const auto slow = rzf::solve_fixed_point(r, eta, dense);
                CHECK(fast.converged);
                CHECK(slow.converged);
                for (std::size_t i = 0; i < k; ++i)
                {
                    CHECK_THAT(fast.gamma[i], WithinRel(want, 1e-10));
                    CHECK_THAT(slow.gamma[i], WithinRel(want, 1e-10));
                }
            }
    }
}

TEST_CASE("asymptotic - even-theta profile equals the uncorrelated value")
{
    // K >= N makes sum_k R_k = K I exactly
    for (double rho : {0.3, 0.9})
    {
        const rzf::correlation_profile p{rzf::correlation_kind::exponential_even_theta, rho, 0.0, 12, 16};
        const auto sol = rzf::solve_fixed_point(rzf::build_correlations(p, 1), 0.05);
        const double want = rzf::gamma_uncorrelated(12.0 / 16.0, 0.05);
        for (double g : sol.gamma)
            CHECK_THAT(g, WithinRel(want, 1e-8));
    }
}

TEST_CASE("asymptotic - dense solution satisfies its defining equation")
{
    // gamma_k = Tr R_k (sum_j R_j / (1 + gamma_j) + K eta I)^{-1}, checked with a hand-built inverse
    const std::size_t n = 6, k = 4;
    const double eta = 0.2;
    const rzf::correlation_profile p{rzf::correlation_kind::exponential_random_theta, 0.7, 0.0, n, k};
    const auto r = rzf::build_correlations(p, 3);
    const auto sol = rzf::solve_fixed_point(r, eta);

    rzf::complex_matrix t(n, n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                t(a, b) += r[j](a, b) / (1.0 + sol.gamma[j]);
    for (std::size_t a = 0; a < n; ++a)
        t(a, a) += static_cast<double>(k) * eta;

    // Gauss-Jordan inverse, independent of the library's Cholesky
    rzf::complex_matrix inv = rzf::complex_matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c)
    {
        const rzf::cplx piv = t(c, c);
        for (std::size_t j = 0; j < n; ++j)
        {
            t(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (i != c)
            {
                const rzf::cplx f = t(i, c);
                for (std::size_t j = 0; j < n; ++j)
                {
                    t(i, j) -= f * t(c, j);
                    inv(i, j) -= f * inv(c, j);
                }
            }
    }

    for (std::size_t u = 0; u < k; ++u)
    {
        const double tr = rzf::trace_real(rzf_test::naive_multiply(r[u].matrix(), inv));
        CHECK_THAT(sol.gamma[u], WithinRel(tr, 1e-10));
    }

    // Users see different phase ramps, so their values differ
    CHECK(std::abs(sol.gamma[0] - sol.gamma[1]) > 1e-6);
}

TEST_CASE("asymptotic - solver options")
{
    const std::vector<hermitian_matrix> r(4, hermitian_matrix::identity(8));
    const double want = rzf::gamma_uncorrelated(2.0, 0.01);

    rzf::fixed_point_options damped;
    damped.damping = 0.5;
    for (double g : rzf::solve_fixed_point(r, 0.01, damped).gamma)
        CHECK_THAT(g, WithinRel(want, 1e-10));

    rzf::fixed_point_options warm;
    warm.initial = std::vector<double>(4, want);
    const auto ws = rzf::solve_fixed_point(r, 0.01, warm);
    CHECK(ws.iterations <= 2);

    rzf::fixed_point_options starved;
    starved.max_iter = 2;
    CHECK_THROWS_AS(rzf::solve_fixed_point(r, 0.01, starved), rzf::convergence_error);
    try
    {
        rzf::solve_fixed_point(r, 0.01, starved);
    }
    catch (const rzf::convergence_error &e)
    {
        CHECK(e.iterations() == 2);
        CHECK(e.residual() > 0.0);
    }

    rzf::fixed_point_options bad;
    bad.damping = 1.0;
    CHECK_THROWS_AS(rzf::solve_fixed_point(r, 0.01, bad), rzf::parameter_error);
    bad = {};
    bad.initial = {1.0};
    CHECK_THROWS_AS(rzf::solve_fixed_point(r, 0.01, bad), rzf::dimension_error);
    CHECK_THROWS_AS(rzf::solve_fixed_point(r, 0.0), rzf::parameter_error);
    CHECK_THROWS_AS(rzf::solve_fixed_point({}, 0.1), rzf::dimension_error);

    const std::vector<hermitian_matrix> mixed = {hermitian_matrix::identity(2), hermitian_matrix::identity(3)};
    CHECK_THROWS_AS(rzf::solve_fixed_point(mixed, 0.1), rzf::dimension_error);
}

TEST_CASE("asymptotic - common R")
{
    SECTION("all-ones spectrum collapses to the uncorrelated value")
    {
        const std::vector<double> ones(32, 1.0);
        CHECK_THAT(rzf::gamma_common_r(ones, 16, 0.01), WithinRel(rzf::gamma_uncorrelated(2.0, 0.01), 1e-10));
        const auto b = rzf::common_r_bound_check(ones, 16, 0.01);
        CHECK(b.holds);
        CHECK_THAT(b.gamma, WithinRel(b.bound, 1e-10));
    }
    SECTION("rho = 0.9, N = 64, K = 48, 20 dB lies strictly below the bound")
    {
        const auto lambda = exponential_eigenvalues(64, 0.9);
        const double g = rzf::gamma_common_r(lambda, 48, 0.01);
        CHECK(g < rzf::gamma_uncorrelated(64.0 / 48.0, 0.01) * (1.0 - 1e-3));
    }
    SECTION("zero eigenvalue contributes nothing")
    {
        const std::vector<double> lambda = {2.0, 0.0};
        for (std::size_t k : {1u, 3u})
        {
            const double kd = static_cast<double>(k), eta = 0.25;
            const double want = rzf_test::bisect(
                [&](double g) { return g - 1.0 / (kd / (1.0 + g) + kd * eta / 2.0); }, 0.0, 100.0);
            CHECK_THAT(rzf::gamma_common_r(lambda, k, eta), WithinRel(want, 1e-10));
        }
    }
    SECTION("bound holds strictly for rho = 0.5 and by a wide margin near rho = 1")
    {
        const auto mid = rzf::common_r_bound_check(exponential_eigenvalues(32, 0.5), 16, 0.01);
        CHECK(mid.holds);
        CHECK(mid.gamma < mid.bound);

        const auto edge = rzf::common_r_bound_check(exponential_eigenvalues(32, 0.999), 16, 0.01);
        CHECK(edge.holds);
        CHECK(edge.gamma < 0.5 * edge.bound);
    }
    SECTION("common R agrees with the dense solver")
    {
        const rzf::correlation_profile p{rzf::correlation_kind::exponential_common_theta, 0.8, 0.4, 10, 6};
        const auto r = rzf::build_correlations(p, 1);
        const double want = rzf::gamma_common_r(rzf::herm_eigenvalues(r[0]), 6, 0.1);
        for (double g : rzf::solve_fixed_point(r, 0.1).gamma)
            CHECK_THAT(g, WithinRel(want, 1e-10));
    }
    SECTION("input checks")
    {
        const std::vector<double> unnormalised = {1.0, 2.0};
        CHECK_THROWS_AS(rzf::gamma_common_r(unnormalised, 2, 0.1), rzf::parameter_error);
        const std::vector<double> negative = {2.5, -0.5};
        CHECK_THROWS_AS(rzf::gamma_common_r(negative, 2, 0.1), rzf::parameter_error);
        CHECK_THROWS_AS(rzf::gamma_common_r({}, 2, 0.1), rzf::dimension_error);
        const std::vector<double> ones(4, 1.0);
        CHECK_THROWS_AS(rzf::gamma_common_r(ones, 0, 0.1), rzf::parameter_error);
    }
}

TEST_CASE("asymptotic - common R bound over random spectra")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> lambda(16);
        double sum = 0.0;
        for (auto &l : lambda)
            sum += (l = u(rng));
        for (auto &l : lambda)
            l *= 16.0 / sum;
        const auto b = rzf::common_r_bound_check(lambda, 8, 0.05);
        CHECK(b.holds);
        CHECK(b.gamma < b.bound - 1e-10);
    }
}
