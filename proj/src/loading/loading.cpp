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
#include "rzf/loading.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rzf
{
    namespace
    {
        void require_eta(double eta, const char *op)
        {
            if (!(eta > 0.0) || !std::isfinite(eta))
                throw parameter_error(std::string(op) + ": eta must be positive and finite");
        }

        // Bisection on a sign change; f(lo) and f(hi) must have opposite signs
        template <typename F>
        double bisect(F &&f, double lo, double hi, double tol)
        {
            const bool rising = f(lo) < 0.0;
            for (int it = 0; it < 200 && hi - lo > tol; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                if ((f(mid) < 0.0) == rising)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }

        // sqrt(eta^2 + 4 eta) ln((eta + sqrt(eta^2 + 4 eta)) / (2 eta)) - 1
        double threshold_equation(double eta)
        {
            const double s = std::sqrt(eta * eta + 4.0 * eta);
            return s * std::log((eta + s) / (2.0 * eta)) - 1.0;
        }
    }

    std::string_view to_string(loading_method method)
    {
        switch (method)
        {
        case loading_method::exact_root_find:
            return "ExactRootFind";
        case loading_method::clamped_at_one:
            return "ClampedAtOne";
        case loading_method::low_snr_approx:
            return "LowSnrApprox";
        case loading_method::high_snr_approx:
            return "HighSnrApprox";
        }
        return "unknown";
    }

    double objective_f(double x, double eta)
    {
        return std::log1p(gamma_uncorrelated(x, eta)) / x;
    }

    double dfdx(double x, double eta)
    {
        require_eta(eta, "dfdx");
        if (!(x > 0.0) || !std::isfinite(x))
            throw parameter_error("dfdx: x must be positive and finite");
        const double b = x + eta - 1.0;
        const double s = std::sqrt(b * b + 4.0 * eta);
        return 1.0 / (x * s) - std::log((b + s) / (2.0 * eta)) / (x * x);
    }

    double x_star_loose_bound()
    {
        return 6.0 * std::numbers::sqrt3 - 9.0;
    }

    loading_solution optimal_x_exact(double eta, double tol)
    {
        require_eta(eta, "optimal_x_exact");
        if (!(tol > 0.0))
            throw parameter_error("optimal_x_exact: tol must be positive");

        loading_solution out;
        out.eta = eta;
        if (dfdx(1.0, eta) <= 0.0)
        {
            out.method = loading_method::clamped_at_one;
            out.x_star = 1.0;
        }
        else
        {
            const double hi = x_star_loose_bound();
            if (!(dfdx(hi, eta) < 0.0))
                throw numerical_error("optimal_x_exact: derivative does not change sign on [1, 6 sqrt(3) - 9] for eta = " +
                                      std::to_string(eta));
            out.method = loading_method::exact_root_find;
            out.x_star = bisect([eta](double x)
                                { return dfdx(x, eta); },
                                1.0, hi, tol);
        }
        out.alpha_star = 1.0 / out.x_star;
        out.objective = objective_f(out.x_star, eta);
        return out;
    }

    double optimal_x_grid(double eta, double lo, double hi, double step)
    {
        require_eta(eta, "optimal_x_grid");
        if (!(step > 0.0) || !(hi >= lo) || !(lo > 0.0))
            throw parameter_error("optimal_x_grid: need 0 < lo <= hi and step > 0");

        const auto points = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        double best_x = lo, best_f = objective_f(lo, eta);
        for (std::size_t i = 1; i < points; ++i)
        {
            const double x = lo + static_cast<double>(i) * step;
            const double f = objective_f(x, eta);
            if (f > best_f)
            {
                best_f = f;
                best_x = x;
            }
        }
        return best_x;
    }

    double optimal_x_low_snr(double eta)
    {
        require_eta(eta, "optimal_x_low_snr");
        const double eta_o = eta_threshold();
        if (eta > eta_o)
            throw parameter_error("optimal_x_low_snr: eta = " + std::to_string(eta) +
                                  " is above the full-loading threshold " + std::to_string(eta_o));

        const double s = std::sqrt(eta * eta + 4.0 * eta);
        const double c = 1.0 - 0.5 * s * std::log((eta + s) / (2.0 * eta));
        const double disc = c * c - (1.0 - 2.0 * c) * (eta + 3.0);
        if (disc < 0.0)
            throw parameter_error("optimal_x_low_snr: eta = " + std::to_string(eta) +
                                  " is outside the approximation regime (negative discriminant)");
        return c + std::sqrt(disc);
    }

    double optimal_x_high_snr(double eta)
    {
        require_eta(eta, "optimal_x_high_snr");
        if (!(eta < 1.0))
            throw parameter_error("optimal_x_high_snr: eta must be below 1");
        // eta e^{1 + W(u)} = (1 - eta) / W(u) since e^{W(u)} = u / W(u)
        const double u = (1.0 - eta) / (eta * std::numbers::e);
        return 1.0 - eta + (1.0 - eta) / lambert_w0(u);
    }

    double eta_threshold()
    {
        static const double eta_o = bisect(threshold_equation, 1e-3, 1.0, 1e-15);
        return eta_o;
    }

    loading_constants compute_loading_constants()
    {
        loading_constants c;
        c.eta_o = eta_threshold();
        c.x_ub_loose = x_star_loose_bound();
        c.snr_threshold_db = 10.0 * std::log10(1.0 / c.eta_o);

        // x*(eta) rises from 1 (eta -> 0) to a single peak and falls back to 1 at eta_o
        auto neg_x = [](double log_eta)
        { return -optimal_x_exact(std::exp(log_eta)).x_star; };
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = std::log(1e-8), b = std::log(c.eta_o);
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = neg_x(x1), f2 = neg_x(x2);
        while (b - a > 1e-9)
        {
            if (f1 < f2)
            {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = neg_x(x1);
            }
            else
            {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = neg_x(x2);
            }
        }
        c.eta_at_x_ub = std::exp(0.5 * (a + b));
        c.x_ub_tight = optimal_x_exact(c.eta_at_x_ub).x_star;
        return c;
    }
}
