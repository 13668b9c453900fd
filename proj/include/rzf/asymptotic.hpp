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

#ifndef RZF_ASYMPTOTIC_HPP
#define RZF_ASYMPTOTIC_HPP

#include "rzf/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rzf
{
    struct asymptotic_solution
    {
        std::vector<double> gamma; // deterministic SLNR per user
        std::size_t iterations = 0;
        double residual = 0.0;     // max |gamma^{t+1} - gamma^t| on the last sweep
        bool converged = false;
    };

    struct fixed_point_options
    {
        double tol = 1e-12;           // relative: stop when max |update| <= tol (1 + max gamma)
        std::size_t max_iter = 10000;
        double damping = 0.0;         // gamma <- (1 - damping) T(gamma) + damping gamma
        std::vector<double> initial;  // empty: start from 0
        bool exploit_diagonal = true; // O(KN) sweeps when every R_k is diagonal
    };

    // Deterministic-equivalent SLNR of RZF with beta = K eta: the unique
    // nonnegative solution of
    //
    //   gamma_k = Tr( R_k ( sum_j R_j / (1 + gamma_j) + K eta I )^{-1} ),
    //
    // found by Picard iteration. Throws convergence_error past max_iter.
    asymptotic_solution solve_fixed_point(std::span<const hermitian_matrix> r, double eta,
                                          const fixed_point_options &options = {});

    // Closed form for R_k = I with x = N / K (the nonnegative root of
    // eta g^2 + (eta - x + 1) g - x = 0), cancellation-free at both ends.
    double gamma_uncorrelated(double x, double eta);

    // Common R for all users, given its eigenvalues:
    //   gamma = sum_n 1 / (K / (1 + gamma) + K eta / lambda_n)
    // Zero eigenvalues contribute nothing. Requires sum lambda = N to 1e-6 N.
    double gamma_common_r(std::span<const double> eigenvalues, std::size_t k, double eta, double tol = 1e-12,
                          std::size_t max_iter = 10000);

    struct common_r_bound
    {
        double gamma = 0.0; // gamma_common_r
        double bound = 0.0; // gamma_uncorrelated(N / K, eta)
        bool holds = false; // gamma <= bound + 1e-10
    };

    // The common-R SLNR never exceeds the uncorrelated value (equality iff R = I)
    common_r_bound common_r_bound_check(std::span<const double> eigenvalues, std::size_t k, double eta,
                                        double tol = 1e-12);
}

#endif
