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

#ifndef RZF_PRECODING_HPP
#define RZF_PRECODING_HPP

#include "rzf/linalg.hpp"

#include <span>
#include <vector>

namespace rzf
{
    // RZF precoder F = (H H^* + beta I)^{-1} H with equal per-user power
    struct precoded_system
    {
        complex_matrix f;     // N x K
        std::vector<double> p; // per-user amplitude scalars
        double beta = 0.0;
        double eta = 0.0;
        double ptx = 1.0;
    };

    struct user_metrics
    {
        std::vector<double> slnr;
        std::vector<double> sinr;
        std::vector<double> power_sq; // p_k^2
    };

    complex_matrix rzf_precode(const complex_matrix &h, double beta);

    // p_k = sqrt(ptx / (K ||f_k||^2)). Throws numerical_error for a zero column.
    std::vector<double> power_control(const complex_matrix &f, double ptx = 1.0);

    // beta = K eta, i.e. K sigma^2 / P_tx
    precoded_system precode(const complex_matrix &h, double eta, double ptx = 1.0);

    // SLNR_k = q_k / (1 - q_k), q_k = h_k^* (H H^* + K eta I)^{-1} h_k.
    // One Cholesky factorization for all users.
    std::vector<double> slnr_instantaneous(const complex_matrix &h, double eta);

    // SLNR_k = h_k^* (sum_{i != k} h_i h_i^* + K eta I)^{-1} h_k, one factorization
    // per user. Reference route for the inversion-lemma form above.
    std::vector<double> slnr_leave_one_out(const complex_matrix &h, double eta);

    // Signal over leaked power plus noise, evaluated from an explicit precoder:
    // |h_k^* f_k p_k|^2 / (sum_{i != k} |h_i^* f_k p_k|^2 + eta ptx)
    std::vector<double> slnr_ratio(const complex_matrix &h, const complex_matrix &f, std::span<const double> p,
                                   double eta, double ptx = 1.0);

    // |h_k^* f_k p_k|^2 / (sum_{i != k} |h_k^* f_i p_i|^2 + eta ptx)
    std::vector<double> sinr_instantaneous(const complex_matrix &h, const complex_matrix &f, std::span<const double> p,
                                           double eta, double ptx = 1.0);

    // Precode, then evaluate SLNR (inversion-lemma route), SINR and p_k^2
    user_metrics evaluate_metrics(const complex_matrix &h, double eta, double ptx = 1.0);
}

#endif
