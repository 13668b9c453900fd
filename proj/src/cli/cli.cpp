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


#include "rzf/cli.hpp"

#include "rzf/asymptotic.hpp"
#include "rzf/channel.hpp"
#include "rzf/errors.hpp"
#include "rzf/experiments.hpp"
#include "rzf/kernels.hpp"
#include "rzf/loading.hpp"
#include "rzf/precoding.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rzf::cli
{
    namespace
    {
        using key_values = std::vector<std::pair<std::string, std::string>>;

        struct options
        {
            std::size_t n = 128;
            std::size_t k = 64;
            double snr_db = 20.0;
            std::string profile = "identity";
            double rho = 0.0;
            double theta = 0.0;
            std::size_t trials = 200;
            std::uint64_t seed = 1;
            std::string out;
            double tol = 1e-12;
            std::size_t max_iter = 10000;
            std::string rate_units = "nats";

            // sweep-correlation
            double alpha = 0.75;
            std::vector<double> rho_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
            std::size_t draws = 20;

            // sweep-loading
            double snr_min = -10.0;
            double snr_max = 40.0;
            double snr_step = 0.5;
            double brute_step = 1e-4;
        };

        std::string fmt(double v)
        {
            // Shortest text that reads back to the same double
            char buf[32];
            const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
            return std::string(buf, end);
        }

        std::string fmt_fixed(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", v);
            return buf;
        }

        double rate(double gamma, const options &o)
        {
            const double nats = std::log1p(gamma);
            return o.rate_units == "bits" ? nats / std::numbers::ln2 : nats;
        }

        system_config to_system_config(const options &o)
        {
            system_config c;
            c.profile.kind = parse_correlation_kind(o.profile);
            c.profile.rho = o.rho;
            c.profile.theta = o.theta;
            c.profile.n = o.n;
            c.profile.k = o.k;
            c.snr_db = o.snr_db;
            c.trials = o.trials;
            c.seed = o.seed;
            c.validate();
            return c;
        }

        void check_solver(const options &o)
        {
            if (!(o.tol > 0.0 && o.tol < 1.0))
                throw parameter_error("tol: must lie in (0, 1)");
            if (o.max_iter == 0)
                throw parameter_error("max-iter: must be at least 1");
        }

        // Resolved configuration. The output path and config-file path are left
        // out so the same run writes the same bytes wherever it writes them.
        key_values resolved(const std::string &subcommand, const options &o)
        {
            key_values kv = {{"subcommand", subcommand}, {"version", std::string(library_version())}};
            if (subcommand == "sweep-loading")
            {
                kv.insert(kv.end(), {{"snr-min", fmt(o.snr_min)},
                                     {"snr-max", fmt(o.snr_max)},
                                     {"snr-step", fmt(o.snr_step)},
                                     {"brute-step", fmt(o.brute_step)},
                                     {"tol", fmt(o.tol)}});
                return kv;
            }
            if (subcommand == "loading")
            {
                kv.insert(kv.end(), {{"snr-db", fmt(o.snr_db)}, {"tol", fmt(o.tol)}, {"rate-units", o.rate_units}});
                return kv;
            }
            if (subcommand == "sweep-correlation")
            {
                std::string grid;
                for (std::size_t i = 0; i < o.rho_grid.size(); ++i)
                    grid += (i ? "," : "") + fmt(o.rho_grid[i]);
                kv.insert(kv.end(), {{"n", std::to_string(o.n)},
                                     {"alpha", fmt(o.alpha)},
                                     {"snr-db", fmt(o.snr_db)},
                                     {"theta", fmt(o.theta)},
                                     {"rho-grid", grid},
                                     {"draws", std::to_string(o.draws)},
                                     {"seed", std::to_string(o.seed)},
                                     {"tol", fmt(o.tol)},
                                     {"max-iter", std::to_string(o.max_iter)}});
                return kv;
            }
            for (auto &p : to_system_config(o).to_key_values())
                kv.push_back(std::move(p));
            kv.emplace_back("tol", fmt(o.tol));
            kv.emplace_back("max-iter", std::to_string(o.max_iter));
            kv.emplace_back("rate-units", o.rate_units);
            return kv;
        }

        void echo(std::ostream &out, const key_values &kv)
        {
            for (const auto &[k, v] : kv)
                out << "# " << k << " = " << v << '\n';
        }

        // Resolved config first, then whatever the experiment adds on top
        void merge_metadata(experiment_result &res, const key_values &kv)
        {
            key_values merged = kv;
            for (auto &entry : res.metadata)
                if (std::none_of(merged.begin(), merged.end(), [&](const auto &m) { return m.first == entry.first; }))
                    merged.push_back(entry);
            res.metadata = std::move(merged);
        }

        // Wall time goes to stderr so the CSV bytes depend only on the inputs
        void emit_csv(std::ostream &out, std::ostream &err, experiment_result &res, const key_values &kv,
                      const options &o)
        {
            merge_metadata(res, kv);
            err << "# " << res.name << ": " << res.rows() << " rows in " << res.wall_seconds << " s\n";
            if (o.out.empty())
            {
                write_csv(out, res);
                return;
            }
            write_csv(o.out, res);
            echo(out, kv);
            out << "wrote " << res.rows() << " rows to " << o.out << '\n';
        }

        // Human-readable aligned table; %.6f suffices on a terminal, the CSV keeps full precision
        void print_table(std::ostream &out, const experiment_result &res)
        {
            for (const auto &name : res.column_names)
                out << std::setw(14) << name;
            out << '\n';
            for (std::size_t r = 0; r < res.rows(); ++r)
            {
                for (std::size_t c = 0; c < res.columns.size(); ++c)
                {
                    const double v = res.columns[c][r];
                    if (res.column_names[c] == "user")
                        out << std::setw(14) << static_cast<std::size_t>(v);
                    else
                        out << std::setw(14) << fmt_fixed(v);
                }
                out << '\n';
            }
        }

        std::vector<double> user_index(std::size_t k)
        {
            std::vector<double> u(k);
            for (std::size_t i = 0; i < k; ++i)
                u[i] = static_cast<double>(i);
            return u;
        }

        double mean(const std::vector<double> &v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / static_cast<double>(v.size());
        }

        int cmd_asymptotic(std::ostream &out, std::ostream &err, const options &o)
        {
            check_solver(o);
            const auto config = to_system_config(o);
            const auto kv = resolved("asymptotic", o);

            fixed_point_options fp;
            fp.tol = o.tol;
            fp.max_iter = o.max_iter;
            const auto sol = solve_fixed_point(build_correlations(config.profile, config.seed), config.eta(), fp);

            experiment_result res;
            res.name = "asymptotic";
            res.add_column("user", user_index(config.k()));
            res.add_column("gamma", sol.gamma);
            std::vector<double> r(sol.gamma.size());
            std::transform(sol.gamma.begin(), sol.gamma.end(), r.begin(), [&](double g) { return rate(g, o); });
            res.add_column("rate_" + o.rate_units, std::move(r));

            if (!o.out.empty())
                return emit_csv(out, err, res, kv, o), exit_ok;

            echo(out, kv);
            print_table(out, res);
            out << "# fixed-point iterations = " << sol.iterations << ", residual = " << fmt(sol.residual) << '\n';
            out << "gamma mean = " << fmt_fixed(mean(sol.gamma)) << '\n';
            if (config.profile.kind == correlation_kind::identity)
                out << "gamma closed form = "
                    << fmt_fixed(gamma_uncorrelated(static_cast<double>(config.n()) / static_cast<double>(config.k()),
                                                    config.eta()))
                    << '\n';
            return exit_ok;
        }

        int cmd_metrics(std::ostream &out, std::ostream &err, const options &o)
        {
            check_solver(o);
            const auto config = to_system_config(o);
            const auto kv = resolved("metrics", o);

            const channel_sampler sampler(config);
            const auto real = sampler.sample(0);
            const auto m = evaluate_metrics(real.h, config.eta());
            fixed_point_options fp;
            fp.tol = o.tol;
            fp.max_iter = o.max_iter;
            const auto det = solve_fixed_point(sampler.correlations(), config.eta(), fp);

            experiment_result res;
            res.name = "metrics";
            res.add_column("user", user_index(config.k()));
            res.add_column("slnr", m.slnr);
            res.add_column("sinr", m.sinr);
            res.add_column("gamma", det.gamma);
            res.add_column("power_sq", m.power_sq);
            std::vector<double> r(m.sinr.size());
            std::transform(m.sinr.begin(), m.sinr.end(), r.begin(), [&](double g) { return rate(g, o); });
            res.add_column("sinr_rate_" + o.rate_units, std::move(r));

            if (!o.out.empty())
                return emit_csv(out, err, res, kv, o), exit_ok;

            echo(out, kv);
            print_table(out, res);
            out << "slnr mean = " << fmt_fixed(mean(m.slnr)) << ", sinr mean = " << fmt_fixed(mean(m.sinr))
                << ", gamma mean = " << fmt_fixed(mean(det.gamma)) << '\n';
            return exit_ok;
        }

        int cmd_loading(std::ostream &out, std::ostream &err, const options &o)
        {
            check_solver(o);
            if (!std::isfinite(o.snr_db))
                throw parameter_error("snr-db: must be finite");
            const auto kv = resolved("loading", o);
            const double eta = std::pow(10.0, -o.snr_db / 10.0);
            const auto sol = optimal_x_exact(eta, o.tol);
            const double eta_o = eta_threshold();
            const double unit = o.rate_units == "bits" ? 1.0 / std::numbers::ln2 : 1.0;

            std::string low = "n/a", high = "n/a";
            double low_x = std::nan(""), high_x = std::nan("");
            if (eta <= eta_o)
            {
                try
                {
                    low_x = optimal_x_low_snr(eta);
                    low = fmt_fixed(low_x) + " (alpha = " + fmt_fixed(1.0 / low_x) + ")";
                }
                catch (const parameter_error &)
                {
                    low = "n/a (outside the approximation's range)";
                }
                high_x = optimal_x_high_snr(eta);
                high = fmt_fixed(high_x) + " (alpha = " + fmt_fixed(1.0 / high_x) + ")";
            }

            if (!o.out.empty())
            {
                experiment_result res;
                res.name = "loading";
                res.add_column("snr_db", {o.snr_db});
                res.add_column("eta", {eta});
                res.add_column("x_star", {sol.x_star});
                res.add_column("alpha_star", {sol.alpha_star});
                res.add_column("objective_" + o.rate_units, {sol.objective * unit});
                res.add_column("clamped", {sol.method == loading_method::clamped_at_one ? 1.0 : 0.0});
                res.add_column("x_low_snr", {low_x});
                res.add_column("x_high_snr", {high_x});
                return emit_csv(out, err, res, kv, o), exit_ok;
            }

            echo(out, kv);
            out << "eta = " << fmt(eta) << '\n'
                << "x* = " << fmt_fixed(sol.x_star) << '\n'
                << "alpha* = " << fmt_fixed(sol.alpha_star) << '\n'
                << "method = " << to_string(sol.method) << '\n'
                << "rate per antenna = " << fmt_fixed(sol.objective * unit) << ' ' << o.rate_units << '\n'
                << "low-SNR approximation x = " << low << '\n'
                << "high-SNR approximation x = " << high << '\n'
                << "threshold eta_o = " << fmt_fixed(eta_o) << " (" << fmt_fixed(10.0 * std::log10(1.0 / eta_o))
                << " dB)\n";
            return exit_ok;
        }

        int cmd_sweep_cdf(std::ostream &out, std::ostream &err, const options &o)
        {
            const auto config = to_system_config(o);
            auto res = run_cdf_experiment(config);
            emit_csv(out, err, res, resolved("sweep-cdf", o), o);
            return exit_ok;
        }

        int cmd_sweep_correlation(std::ostream &out, std::ostream &err, const options &o)
        {
            check_solver(o);
            correlation_sweep_options s;
            s.n = o.n;
            s.alpha = o.alpha;
            s.snr_db = o.snr_db;
            s.rho_grid = o.rho_grid;
            s.theta_draws = o.draws;
            s.common_theta = o.theta;
            s.seed = o.seed;
            s.tol = o.tol;
            s.max_iter = o.max_iter;
            auto res = run_correlation_sweep(s);
            emit_csv(out, err, res, resolved("sweep-correlation", o), o);
            return exit_ok;
        }

        int cmd_sweep_loading(std::ostream &out, std::ostream &err, const options &o)
        {
            check_solver(o);
            if (!(o.brute_step > 0.0 && o.brute_step < 0.5))
                throw parameter_error("brute-step: must lie in (0, 0.5)");
            const auto grid = linear_grid(o.snr_min, o.snr_max, o.snr_step);
            auto res = run_loading_sweep(grid, o.tol, o.brute_step);
            emit_csv(out, err, res, resolved("sweep-loading", o), o);
            return exit_ok;
        }

        struct check
        {
            std::string name;
            std::function<std::string()> body; // empty string on success, else the failure detail
        };

        std::string rel_check(double got, double want, double tol)
        {
            const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
            if (rel <= tol)
                return {};
            return "got " + fmt(got) + ", want " + fmt(want) + " (rel " + fmt(rel) + ")";
        }

        complex_matrix random_channel(std::size_t n, std::size_t k, std::uint64_t seed)
        {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> g(0.0, std::sqrt(0.5));
            complex_matrix h(n, k);
            for (auto &z : h.data())
                z = {g(rng), g(rng)};
            return h;
        }

        int cmd_selftest(std::ostream &out)
        {
            const std::vector<check> checks = {
                {"golden-ratio closed form",
                 [] { return rel_check(gamma_uncorrelated(1.0, 1.0), (std::sqrt(5.0) - 1.0) / 2.0, 1e-14); }},
                {"fixed point matches closed form",
                 []
                 {
                     for (double x : {1.0, 2.5, 7.0})
                         for (double snr : {-10.0, 10.0, 40.0})
                         {
                             const std::size_t k = 8;
                             const auto n = static_cast<std::size_t>(x * k);
                             const double eta = std::pow(10.0, -snr / 10.0);
                             std::vector<hermitian_matrix> r(k, hermitian_matrix::identity(n));
                             const auto sol = solve_fixed_point(r, eta);
                             if (auto e = rel_check(sol.gamma[0], gamma_uncorrelated(x, eta), 1e-10); !e.empty())
                                 return e;
                         }
                     return std::string{};
                 }},
                {"lambert w at 1", [] { return rel_check(lambert_w0(1.0), 0.56714329040978387, 1e-14); }},
                {"lambert w inverse",
                 []
                 {
                     for (double z : {-0.36, -0.1, 0.5, 3.0, 1e3, 1e8})
                     {
                         const double w = lambert_w0(z);
                         if (auto e = rel_check(w * std::exp(w), z, 1e-12); !e.empty())
                             return e;
                     }
                     return std::string{};
                 }},
                {"threshold is a root of the slope at x = 1",
                 []
                 {
                     const double eta_o = eta_threshold();
                     const double slope = dfdx(1.0, eta_o);
                     return std::abs(slope) < 1e-10 ? std::string{} : "dfdx(1, eta_o) = " + fmt(slope);
                 }},
                {"low-SNR clamp", []
                 {
                     const auto s = optimal_x_exact(1.0);
                     return s.method == loading_method::clamped_at_one && s.x_star == 1.0
                                ? std::string{}
                                : "method " + std::string(to_string(s.method));
                 }},
                {"SLNR routes agree",
                 []
                 {
                     const auto h = random_channel(16, 8, 7);
                     const double eta = 0.1;
                     const auto lemma = slnr_instantaneous(h, eta);
                     const auto loo = slnr_leave_one_out(h, eta);
                     const auto sys = precode(h, eta);
                     const auto ratio = slnr_ratio(h, sys.f, sys.p, eta);
                     for (std::size_t i = 0; i < lemma.size(); ++i)
                     {
                         if (auto e = rel_check(lemma[i], loo[i], 1e-9); !e.empty())
                             return "leave-one-out: " + e;
                         if (auto e = rel_check(lemma[i], ratio[i], 1e-9); !e.empty())
                             return "ratio form: " + e;
                     }
                     return std::string{};
                 }},
                {"eigendecomposition residual",
                 []
                 {
                     const auto h = random_channel(12, 12, 11);
                     const auto a = hermitian_matrix::symmetrize(h + h.adjoint());
                     const auto e = herm_eig(a);
                     complex_matrix d(12, 12);
                     for (std::size_t i = 0; i < 12; ++i)
                         d(i, i) = e.values[i];
                     const double res = (a.matrix() * e.vectors - e.vectors * d).frobenius_norm();
                     return res < 1e-12 * a.matrix().frobenius_norm() ? std::string{} : "residual " + fmt(res);
                 }},
                {"common-R bound",
                 []
                 {
                     std::vector<double> lambda = {2.0, 1.0, 0.5, 0.5};
                     const auto b = common_r_bound_check(lambda, 2, 0.1);
                     return b.holds && b.gamma < b.bound ? std::string{}
                                                         : "gamma " + fmt(b.gamma) + " vs bound " + fmt(b.bound);
                 }},
                {"kernel variants agree",
                 []
                 {
                     const auto x = random_channel(37, 1, 3);
                     const auto y = random_channel(37, 1, 5);
                     const auto &s = kernels::table(kernels::isa::scalar);
                     const auto &a = kernels::table(kernels::active_isa());
                     const auto ds = s.dotc(x.data().data(), y.data().data(), 37);
                     const auto da = a.dotc(x.data().data(), y.data().data(), 37);
                     return std::abs(ds - da) <= 1e-13 * std::abs(ds) ? std::string{} : "dotc differs";
                 }},
            };

            int failed = 0;
            for (const auto &c : checks)
            {
                std::string detail;
                try
                {
                    detail = c.body();
                }
                catch (const std::exception &ex)
                {
                    detail = std::string("threw: ") + ex.what();
                }
                out << (detail.empty() ? "PASS " : "FAIL ") << c.name;
                if (!detail.empty())
                {
                    out << ": " << detail;
                    ++failed;
                }
                out << '\n';
            }
            out << "kernels: " << kernels::isa_name(kernels::active_isa()) << '\n';
            out << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << '\n';
            return failed ? exit_numerical : exit_ok;
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        options o;
        CLI::App app{"Asymptotic SLNR analysis and user-loading optimization for RZF precoding", "rzf"};
        app.set_version_flag("--version", std::string(library_version()));
        app.set_config("--config", "", "Read key = value settings from a file; flags take precedence");
        app.allow_config_extras(false);
        app.require_subcommand(1, 1);

        app.add_option("--n", o.n, "Base-station antennas N")->capture_default_str();
        app.add_option("--k", o.k, "Users K")->capture_default_str();
        app.add_option("--snr-db", o.snr_db, "SNR in dB; eta = 10^(-snr/10)")->capture_default_str();
        app.add_option("--profile", o.profile, "Correlation profile")
            ->check(CLI::IsMember({"identity", "exp-even", "exp-random", "exp-common"}))
            ->capture_default_str();
        app.add_option("--rho", o.rho, "Correlation magnitude in [0, 1)")->capture_default_str();
        app.add_option("--theta", o.theta, "Common phase (radians) for exp-common")->capture_default_str();
        app.add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
        app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
        app.add_option("--out", o.out, "CSV output path (default: stdout)");
        app.add_option("--tol", o.tol, "Solver tolerance")->capture_default_str();
        app.add_option("--max-iter", o.max_iter, "Fixed-point iteration budget")->capture_default_str();
        app.add_option("--rate-units", o.rate_units, "Units of reported rates")
            ->check(CLI::IsMember({"nats", "bits"}))
            ->capture_default_str();
        app.add_option("--alpha", o.alpha, "User loading K/N for sweep-correlation")->capture_default_str();
        app.add_option("--rho-grid", o.rho_grid, "Comma-separated rho values for sweep-correlation")
            ->delimiter(',')
            ->capture_default_str();
        app.add_option("--draws", o.draws, "Random-theta draws per rho for sweep-correlation")->capture_default_str();
        app.add_option("--snr-min", o.snr_min, "First SNR (dB) of sweep-loading")->capture_default_str();
        app.add_option("--snr-max", o.snr_max, "Last SNR (dB) of sweep-loading")->capture_default_str();
        app.add_option("--snr-step", o.snr_step, "SNR step (dB) of sweep-loading")->capture_default_str();
        app.add_option("--brute-step", o.brute_step, "Grid step of the brute-force loading search")
            ->capture_default_str();

        const std::vector<std::pair<std::string, std::string>> subcommands = {
            {"asymptotic", "Deterministic SLNR per user for a correlation profile"},
            {"metrics", "Sample one channel and report per-user SLNR and SINR"},
            {"loading", "Optimal user loading at one SNR"},
            {"sweep-cdf", "Pooled SLNR/SINR samples and their empirical CDF"},
            {"sweep-correlation", "Deterministic SLNR versus correlation magnitude"},
            {"sweep-loading", "Optimal loading and its approximations versus SNR"},
            {"selftest", "Closed-form and oracle cross-checks"},
        };
        for (const auto &[name, desc] : subcommands)
            app.add_subcommand(name, desc)->fallthrough();

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        const std::string cmd = app.get_subcommands().front()->get_name();
        try
        {
            if (cmd == "asymptotic")
                return cmd_asymptotic(out, err, o);
            if (cmd == "metrics")
                return cmd_metrics(out, err, o);
            if (cmd == "loading")
                return cmd_loading(out, err, o);
            if (cmd == "sweep-cdf")
                return cmd_sweep_cdf(out, err, o);
            if (cmd == "sweep-correlation")
                return cmd_sweep_correlation(out, err, o);
            if (cmd == "sweep-loading")
                return cmd_sweep_loading(out, err, o);
            return cmd_selftest(out);
        }
        catch (const std::invalid_argument &e)
        {
            err << "rzf " << cmd << ": " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::exception &e)
        {
            err << "rzf " << cmd << ": " << e.what() << '\n';
            return exit_numerical;
        }
    }
}
