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

#include "rzf/precoding.hpp"
#include "rzf/errors.hpp"
#include "rzf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rzf
{
    namespace
    {
        void require_positive(double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw parameter_error(std::string(name) + ": must be positive and finite");
        }

        void check_operands(const complex_matrix &h, const complex_matrix &f, std::span<const double> p, const char *op)
        {
            if (f.rows() != h.rows() || f.cols() != h.cols())
                throw dimension_error(std::string(op) + ": F must have the shape of H");
            if (p.size() != h.cols())
                throw dimension_error(std::string(op) + ": power vector length must equal K");
        }

        // q clamped below 1 so that q / (1 - q) stays finite
        double slnr_from_q(double q)
        {
            q = std::clamp(q, 0.0, 1.0 - 1e-12);
            return q / (1.0 - q);
        }
    }

    complex_matrix rzf_precode(const complex_matrix &h, double beta)
    {
        require_positive(beta, "rzf_precode: beta");
        return shifted_gram_solve(h, beta, h);
    }

    std::vector<double> power_control(const complex_matrix &f, double ptx)
    {
        require_positive(ptx, "power_control: ptx");
        const double k = static_cast<double>(f.cols());
        std::vector<double> p(f.cols());
        for (std::size_t i = 0; i < f.cols(); ++i)
        {
            const double nsq = kernels::norm_sq(f.col(i));
            if (!(nsq > 0.0))
                throw numerical_error("power_control: precoder column " + std::to_string(i) +
                                      " is zero (degenerate user channel)");
            p[i] = std::sqrt(ptx / (k * nsq));
        }
        return p;
    }

    precoded_system precode(const complex_matrix &h, double eta, double ptx)
    {
        require_positive(eta, "precode: eta");
        const double beta = static_cast<double>(h.cols()) * eta;
        complex_matrix f = rzf_precode(h, beta);
        std::vector<double> p = power_control(f, ptx);
        return {std::move(f), std::move(p), beta, eta, ptx};
    }

    std::vector<double> slnr_instantaneous(const complex_matrix &h, double eta)
    {
        require_positive(eta, "slnr_instantaneous: eta");
        const complex_matrix x = shifted_gram_solve(h, static_cast<double>(h.cols()) * eta, h);
        std::vector<double> out(h.cols());
        for (std::size_t k = 0; k < h.cols(); ++k)
            out[k] = slnr_from_q(kernels::dotc(h.col(k), x.col(k)).real());
        return out;
    }

    std::vector<double> slnr_leave_one_out(const complex_matrix &h, double eta)
    {
        require_positive(eta, "slnr_leave_one_out: eta");
        const std::size_t n = h.rows(), k = h.cols();
        std::vector<double> out(k);
        if (k == 1)
        {
            out[0] = kernels::norm_sq(h.col(0)) / eta;
            return out;
        }

        complex_matrix others(n, k - 1);
        for (std::size_t user = 0; user < k; ++user)
        {
            for (std::size_t i = 0, c = 0; i < k; ++i)
                if (i != user)
                    std::copy(h.col(i).begin(), h.col(i).end(), others.col(c++).begin());

            std::vector<cplx> x(h.col(user).begin(), h.col(user).end());
            cholesky_factor(shifted_gram(others, static_cast<double>(k) * eta)).solve_in_place(x);
            out[user] = kernels::dotc(h.col(user), x).real();
        }
        return out;
    }

    std::vector<double> slnr_ratio(const complex_matrix &h, const complex_matrix &f, std::span<const double> p,
                                   double eta, double ptx)
    {
        check_operands(h, f, p, "slnr_ratio");
        require_positive(eta, "slnr_ratio: eta");
        require_positive(ptx, "slnr_ratio: ptx");

        const complex_matrix g = adjoint_times(h, f); // g(i, k) = h_i^* f_k
        const double noise = eta * ptx;
        std::vector<double> out(h.cols());
        for (std::size_t k = 0; k < h.cols(); ++k)
        {
            const double pk2 = p[k] * p[k];
            double leak = 0.0;
            for (std::size_t i = 0; i < h.cols(); ++i)
                if (i != k)
                    leak += std::norm(g(i, k));
            out[k] = pk2 * std::norm(g(k, k)) / (pk2 * leak + noise);
        }
        return out;
    }

    std::vector<double> sinr_instantaneous(const complex_matrix &h, const complex_matrix &f, std::span<const double> p,
                                           double eta, double ptx)
    {
        check_operands(h, f, p, "sinr_instantaneous");
        require_positive(eta, "sinr_instantaneous: eta");
        require_positive(ptx, "sinr_instantaneous: ptx");

        const complex_matrix g = adjoint_times(h, f);
        const double noise = eta * ptx;
        std::vector<double> out(h.cols());
        for (std::size_t k = 0; k < h.cols(); ++k)
        {
            double interference = 0.0;
            for (std::size_t i = 0; i < h.cols(); ++i)
                if (i != k)
                    interference += std::norm(g(k, i)) * p[i] * p[i];
            out[k] = std::norm(g(k, k)) * p[k] * p[k] / (interference + noise);
        }
        return out;
    }

    user_metrics evaluate_metrics(const complex_matrix &h, double eta, double ptx)
    {
        const precoded_system sys = precode(h, eta, ptx);
        user_metrics m;
        m.slnr.resize(h.cols());
        for (std::size_t k = 0; k < h.cols(); ++k)
            m.slnr[k] = slnr_from_q(kernels::dotc(h.col(k), sys.f.col(k)).real());
        m.sinr = sinr_instantaneous(h, sys.f, sys.p, eta, ptx);
        m.power_sq.resize(h.cols());
        for (std::size_t k = 0; k < h.cols(); ++k)
            m.power_sq[k] = sys.p[k] * sys.p[k];
        return m;
    }
}
