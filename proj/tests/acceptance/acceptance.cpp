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


// Acceptance suite. One line per criterion:
//
//     AC<n> PASS|FAIL <what was measured> [<seconds> s]
//
// Run with no arguments for all criteria, or name criteria (AC1 AC7 ...).
// Exit status is nonzero when any selected criterion fails.

#include "rzf/asymptotic.hpp"
#include "rzf/channel.hpp"
#include "rzf/experiments.hpp"
#include "rzf/loading.hpp"
#include "rzf/precoding.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace
{
    struct verdict
    {
        bool pass;
        std::string detail;
    };

    struct criterion
    {
        std::string id;
        double time_limit_s; // 0: none
        std::function<verdict()> body;
    };

    std::string sci(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    double eta_from_db(double snr_db)
    {
        return std::pow(10.0, -snr_db / 10.0);
    }

    double rel(double a, double b)
    {
        return std::abs(a - b) / std::abs(b);
    }

    // Closed form against the fixed point with R_k = I on a 20 x 20 (x, SNR) grid
    verdict ac1()
    {
        // K = 19 and N = 19 + 9 i give x = 1 + 9 i / 19, twenty points from 1 to 10
        const std::size_t k = 19;
        double worst = 0.0, worst_x = 0.0, worst_snr = 0.0;
        for (std::size_t i = 0; i < 20; ++i)
        {
            const std::size_t n = k + 9 * i;
            const double x = static_cast<double>(n) / static_cast<double>(k);
            const std::vector<rzf::hermitian_matrix> r(k, rzf::hermitian_matrix::identity(n));
            for (std::size_t j = 0; j < 20; ++j)
            {
                const double snr = -10.0 + 50.0 * static_cast<double>(j) / 19.0;
                const double eta = eta_from_db(snr);
                const auto sol = rzf::solve_fixed_point(r, eta);
                const double want = rzf::gamma_uncorrelated(x, eta);
                for (double g : sol.gamma)
                    if (rel(g, want) > worst)
                    {
                        worst = rel(g, want);
                        worst_x = x;
                        worst_snr = snr;
                    }
            }
        }
        return {worst <= 1e-10, "closed form vs fixed point, 400 grid points: max rel err " + sci(worst) + " at x = " +
                                    sci(worst_x) + ", " + sci(worst_snr) + " dB (limit 1e-10)"};
    }

    verdict ac2()
    {
        const double eta_o = rzf::eta_threshold();
        const double db = 10.0 * std::log10(1.0 / eta_o);
        const bool eta_ok = std::abs(eta_o - 0.3256) <= 5e-5;
        const bool db_ok = std::abs(db - 4.78) <= 0.01;
        std::ostringstream os;
        os.precision(10);
        os << "eta_o = " << eta_o << (eta_ok ? " (within" : " (outside") << " 0.3256 +- 5e-5), 10 log10(1/eta_o) = "
           << db << " dB" << (db_ok ? " (within" : " (outside") << " 4.78 +- 0.01 dB)";
        return {eta_ok && db_ok, os.str()};
    }

    verdict ac3()
    {
        const double loose = 6.0 * std::sqrt(3.0) - 9.0;
        double max_x = 0.0, at_eta = 0.0;
        bool below_loose = true;
        // 500 log-spaced eta from 1e-6 (60 dB) to 10 (-10 dB)
        for (int i = 0; i < 500; ++i)
        {
            const double eta = std::pow(10.0, -6.0 + 7.0 * i / 499.0);
            const double x = rzf::optimal_x_exact(eta).x_star;
            below_loose = below_loose && x < loose;
            if (x > max_x)
            {
                max_x = x;
                at_eta = eta;
            }
        }
        // Loading-vs-SNR sweep, -10 to 40 dB in 0.1 dB steps
        const auto sweep = rzf::run_loading_sweep(rzf::linear_grid(-10.0, 40.0, 0.1));
        const auto &alpha = sweep.column("alpha_exact");
        const auto it = std::min_element(alpha.begin(), alpha.end());
        const double min_alpha = *it;
        const double min_at = sweep.column("snr_db")[static_cast<std::size_t>(it - alpha.begin())];

        const bool ok = max_x <= 1.3315 + 5e-3 && below_loose && std::abs(min_alpha - 0.751) <= 0.005;
        std::ostringstream os;
        os.precision(7);
        os << "max x* = " << max_x << " at eta = " << at_eta << " (limit 1.3365), x* < 6 sqrt(3) - 9 everywhere: "
           << (below_loose ? "yes" : "no") << ", min alpha* = " << min_alpha << " at " << min_at
           << " dB (target 0.751 +- 0.005)";
        return {ok, os.str()};
    }

    verdict ac4()
    {
        double worst_high = 0.0, worst_high_at = 0.0;
        for (double snr : rzf::linear_grid(20.0, 40.0, 0.1))
        {
            const double eta = eta_from_db(snr);
            const double e = rel(rzf::optimal_x_high_snr(eta), rzf::optimal_x_exact(eta).x_star);
            if (e > worst_high)
            {
                worst_high = e;
                worst_high_at = snr;
            }
        }
        double worst_low = 0.0, worst_low_at = 0.0;
        for (double snr : rzf::linear_grid(5.0, 6.5, 0.05))
        {
            const double eta = eta_from_db(snr);
            const double e = rel(rzf::optimal_x_low_snr(eta), rzf::optimal_x_exact(eta).x_star);
            if (e > worst_low)
            {
                worst_low = e;
                worst_low_at = snr;
            }
        }
        // Where the high-SNR formula first meets the 2% target
        double crossover = std::nan("");
        for (double snr : rzf::linear_grid(20.0, 40.0, 0.1))
        {
            const double eta = eta_from_db(snr);
            if (rel(rzf::optimal_x_high_snr(eta), rzf::optimal_x_exact(eta).x_star) < 0.02)
            {
                crossover = snr;
                break;
            }
        }
        std::ostringstream os;
        os << "high-SNR approx on [20, 40] dB: max rel err " << sci(100.0 * worst_high) << "% at " << sci(worst_high_at)
           << " dB (limit 2%, first below 2% at " << sci(crossover) << " dB); low-SNR approx on [5, 6.5] dB: max rel err "
           << sci(100.0 * worst_low) << "% at " << sci(worst_low_at) << " dB (limit 5%)";
        return {worst_high < 0.02 && worst_low < 0.05, os.str()};
    }

    double sinr_deviation(std::size_t n, std::size_t k, std::size_t trials)
    {
        rzf::system_config c;
        c.profile = {rzf::correlation_kind::identity, 0.0, 0.0, n, k};
        c.snr_db = 20.0;
        c.trials = trials;
        c.seed = 1;
        const rzf::channel_sampler sampler(c);
        const double gamma = rzf::gamma_uncorrelated(static_cast<double>(n) / static_cast<double>(k), c.eta());
        std::vector<double> dev;
        dev.reserve(trials * k);
        for (std::size_t t = 0; t < trials; ++t)
            for (double s : rzf::evaluate_metrics(sampler.sample(t).h, c.eta()).sinr)
                dev.push_back(std::abs(s - gamma) / gamma);
        return rzf::median(dev);
    }

    verdict ac5()
    {
        const double d128 = sinr_deviation(128, 64, 200);
        const double d256 = sinr_deviation(256, 128, 200);
        return {d128 < 0.1 && d256 < d128,
                "median |SINR - gamma| / gamma over 200 trials at 20 dB: " + sci(d128) + " at N = 128, K = 64 (limit 0.1), " +
                    sci(d256) + " at N = 256, K = 128 (must be smaller)"};
    }

    verdict ac6()
    {
        const std::size_t n = 128, k = 96;
        const double eta = eta_from_db(20.0);
        const double want = rzf::gamma_uncorrelated(static_cast<double>(n) / static_cast<double>(k), eta);
        std::ostringstream os;
        bool ok = true;
        os << "even-theta K = 96, N = 128, 20 dB, max rel deviation from uncorrelated:";
        for (double rho : {0.3, 0.6, 0.9})
        {
            const rzf::correlation_profile p{rzf::correlation_kind::exponential_even_theta, rho, 0.0, n, k};
            const auto sol = rzf::solve_fixed_point(rzf::build_correlations(p, 1), eta);
            double worst = 0.0;
            for (double g : sol.gamma)
                worst = std::max(worst, rel(g, want));
            ok = ok && worst <= 1e-8;
            os << " rho " << rho << ": " << sci(worst);
        }
        os << " (limit 1e-8)";
        return {ok, os.str()};
    }

    verdict ac7()
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t violations = 0, false_equalities = 0;
        double min_gap = 1e300, ones_gap = 0.0;
        for (int trial = 0; trial < 1000; ++trial)
        {
            const auto n = static_cast<std::size_t>(2 + rng() % 63);
            const auto k = static_cast<std::size_t>(1 + rng() % (2 * n));
            const double eta = std::pow(10.0, -4.0 + 5.0 * u(rng));
            std::vector<double> lambda(n);
            switch (trial % 3)
            {
            case 0: // uniform weights
                for (auto &l : lambda)
                    l = u(rng);
                break;
            case 1: // exponential-model spectrum
            {
                const rzf::correlation_profile p{rzf::correlation_kind::exponential_common_theta, 0.99 * u(rng) + 0.005,
                                                 0.0, n, 1};
                lambda = rzf::herm_eigenvalues(rzf::build_correlations(p, 1)[0]);
                for (auto &l : lambda)
                    l = std::max(l, 0.0);
                break;
            }
            default: // rank deficient
                for (auto &l : lambda)
                    l = u(rng) < 0.5 ? 0.0 : u(rng);
                lambda[0] += 0.1;
                break;
            }
            double sum = 0.0;
            for (double l : lambda)
                sum += l;
            for (auto &l : lambda)
                l *= static_cast<double>(n) / sum;

            const auto b = rzf::common_r_bound_check(lambda, k, eta);
            const double gap = (b.bound - b.gamma) / b.bound;
            violations += b.holds ? 0 : 1;
            false_equalities += gap <= 1e-10 ? 1 : 0;
            min_gap = std::min(min_gap, gap);

            const std::vector<double> ones(n, 1.0);
            const auto e = rzf::common_r_bound_check(ones, k, eta);
            ones_gap = std::max(ones_gap, std::abs(e.bound - e.gamma) / e.bound);
        }
        const bool ok = violations == 0 && false_equalities == 0 && ones_gap <= 1e-10;
        return {ok, "1000 random trace-normalized spectra: " + std::to_string(violations) + " bound violations, " +
                        std::to_string(false_equalities) + " equalities, min relative gap " + sci(min_gap) +
                        "; all-ones profile max rel gap " + sci(ones_gap) + " (limit 1e-10)"};
    }

    verdict ac8()
    {
        double worst = 0.0;
        std::size_t points = 0, skipped = 0;
        for (double x = 1.0; x <= 3.0 + 1e-9; x += 0.05)
            for (double snr = -10.0; snr <= 40.0 + 1e-9; snr += 2.5)
            {
                const double eta = eta_from_db(snr);
                if (std::abs(x - rzf::optimal_x_exact(eta).x_star) < 1e-3)
                {
                    ++skipped;
                    continue;
                }
                const double h = 1e-6;
                const double fd = (rzf::objective_f(x + h, eta) - rzf::objective_f(x - h, eta)) / (2.0 * h);
                worst = std::max(worst, rel(rzf::dfdx(x, eta), fd));
                ++points;
            }
        return {worst < 1e-5, "dfdx vs central differences (h = 1e-6) on " + std::to_string(points) +
                                  " points, x in [1, 3], SNR in [-10, 40] dB (" + std::to_string(skipped) +
                                  " near roots skipped): max rel err " + sci(worst) + " (limit 1e-5)"};
    }

    verdict ac9()
    {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const auto n = static_cast<std::size_t>(1 + rng() % 64);
            const auto k = static_cast<std::size_t>(1 + rng() % n);
            const double eta = std::pow(10.0, -3.0 + 4.0 * u(rng));
            rzf::complex_matrix h(n, k);
            for (auto &z : h.data())
                z = {g(rng), g(rng)};
            const auto sys = rzf::precode(h, eta);
            const auto ratio = rzf::slnr_ratio(h, sys.f, sys.p, eta);
            const auto quad = rzf::slnr_leave_one_out(h, eta);
            for (std::size_t i = 0; i < k; ++i)
                worst = std::max(worst, rel(ratio[i], quad[i]));
        }
        return {worst <= 1e-8,
                "ratio form vs leave-one-out quadratic form, 100 instances N <= 64: max rel err " + sci(worst) +
                    " (limit 1e-8)"};
    }

    verdict ac10()
    {
        const auto path = std::filesystem::temp_directory_path() / ("rzf_acceptance_ac10_" + std::to_string(::getpid()) + ".csv");
        const std::string cmd = std::string(RZF_CLI_PATH) +
                                " sweep-loading --snr-min -10 --snr-max 40 --snr-step 0.1 --out " + path.string() +
                                " > /dev/null";
        auto read = [&]
        {
            std::ifstream in(path, std::ios::binary);
            std::stringstream s;
            s << in.rdbuf();
            return s.str();
        };
        const int rc1 = std::system(cmd.c_str());
        const std::string first = read();
        std::filesystem::remove(path);
        const int rc2 = std::system(cmd.c_str());
        const std::string second = read();
        std::filesystem::remove(path);
        const bool ok = rc1 == 0 && rc2 == 0 && !first.empty() && first == second;
        return {ok, "two sweep-loading runs: exit " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " +
                        std::to_string(first.size()) + " bytes, " + (first == second ? "byte-identical" : "DIFFERENT")};
    }
}

int main(int argc, char **argv)
{
    const std::vector<criterion> all = {
        {"AC1", 10.0, ac1}, {"AC2", 1.0, ac2}, {"AC3", 30.0, ac3}, {"AC4", 0.0, ac4},  {"AC5", 300.0, ac5},
        {"AC6", 120.0, ac6}, {"AC7", 30.0, ac7}, {"AC8", 0.0, ac8}, {"AC9", 0.0, ac9}, {"AC10", 0.0, ac10},
    };

    std::vector<const criterion *> selected;
    for (int i = 1; i < argc; ++i)
    {
        const auto it = std::find_if(all.begin(), all.end(), [&](const criterion &c) { return c.id == argv[i]; });
        if (it == all.end())
        {
            std::cerr << "unknown criterion '" << argv[i] << "'\n";
            return 2;
        }
        selected.push_back(&*it);
    }
    if (selected.empty())
        for (const auto &c : all)
            selected.push_back(&c);

    int failures = 0;
    for (const auto *c : selected)
    {
        const auto start = std::chrono::steady_clock::now();
        verdict v;
        try
        {
            v = c->body();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = sci(secs) + " s";
        if (c->time_limit_s > 0.0)
        {
            timing += " of " + sci(c->time_limit_s) + " s";
            if (secs > c->time_limit_s)
            {
                v.pass = false;
                timing += ", TOO SLOW";
            }
        }
        std::cout << c->id << (v.pass ? " PASS " : " FAIL ") << v.detail << " [" << timing << "]" << std::endl;
        failures += v.pass ? 0 : 1;
    }
    return failures ? 1 : 0;
}
