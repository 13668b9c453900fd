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

#include "rzf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using Catch::Matchers::ContainsSubstring;

namespace
{
    struct outcome
    {
        int code;
        std::string out;
        std::string err;
    };

    outcome run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "rzf");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = rzf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::filesystem::path write_temp(const std::string &name, const std::string &text)
    {
        const auto path = std::filesystem::temp_directory_path() / name;
        std::ofstream(path, std::ios::binary) << text;
        return path;
    }

    std::string slurp(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }
}

TEST_CASE("cli - loading below the threshold is clamped")
{
    const auto r = run({"loading", "--snr-db", "0"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("alpha* = 1.000000"));
    CHECK_THAT(r.out, ContainsSubstring("method = ClampedAtOne"));
    CHECK_THAT(r.out, ContainsSubstring("# snr-db = 0"));
}

TEST_CASE("cli - loading above the threshold reports both approximations")
{
    const auto r = run({"loading", "--snr-db", "20", "--rate-units", "bits"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("x* = 1.299883"));
    CHECK_THAT(r.out, ContainsSubstring("method = ExactRootFind"));
    CHECK_THAT(r.out, ContainsSubstring("high-SNR approximation x = 1.366619"));
    CHECK_THAT(r.out, ContainsSubstring("bits"));
}

TEST_CASE("cli - asymptotic golden-ratio case")
{
    const auto r = run({"asymptotic", "--n", "64", "--k", "64", "--snr-db", "0", "--profile", "identity"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("gamma mean = 0.618034"));
    CHECK_THAT(r.out, ContainsSubstring("0.618034"));
    CHECK_THAT(r.out, ContainsSubstring("# profile = identity"));
}

TEST_CASE("cli - flags may precede the subcommand")
{
    const auto a = run({"--n", "16", "--k", "8", "asymptotic"});
    const auto b = run({"asymptotic", "--n", "16", "--k", "8"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli - metrics")
{
    const auto r = run({"metrics", "--n", "16", "--k", "4", "--profile", "exp-random", "--rho", "0.5"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("slnr"));
    CHECK_THAT(r.out, ContainsSubstring("sinr"));
    CHECK_THAT(r.out, ContainsSubstring("gamma mean"));
}

TEST_CASE("cli - config file and flags are equivalent")
{
    const auto cfg = write_temp("rzf_cli_equiv.cfg", "# setup\nn = 32\nk = 8\nsnr-db = 10\nprofile = exp-even\n"
                                                     "rho = 0.6\nseed = 4\n");
    const auto from_file = run({"asymptotic", "--config", cfg.string()});
    const auto from_flags =
        run({"asymptotic", "--n", "32", "--k", "8", "--snr-db", "10", "--profile", "exp-even", "--rho", "0.6",
             "--seed", "4"});
    CHECK(from_file.code == 0);
    CHECK(from_file.out == from_flags.out);

    // Flags win over the file
    const auto overridden = run({"asymptotic", "--config", cfg.string(), "--k", "16"});
    CHECK_THAT(overridden.out, ContainsSubstring("# k = 16"));
    std::filesystem::remove(cfg);
}

TEST_CASE("cli - sweeps write CSV with the resolved config")
{
    const auto path = std::filesystem::temp_directory_path() / "rzf_cli_sweep.csv";
    const auto r = run({"sweep-loading", "--snr-min", "0", "--snr-max", "10", "--snr-step", "1", "--out",
                        path.string()});
    CHECK(r.code == 0);
    const auto csv = slurp(path);
    CHECK_THAT(csv, ContainsSubstring("# subcommand = sweep-loading"));
    CHECK_THAT(csv, ContainsSubstring("# snr-step = 1"));
    CHECK_THAT(csv, ContainsSubstring("# version = "));
    CHECK_THAT(csv, ContainsSubstring("snr_db,eta,x_exact,alpha_exact"));

    // Stdout output carries the same bytes
    const auto to_stdout = run({"sweep-loading", "--snr-min", "0", "--snr-max", "10", "--snr-step", "1"});
    CHECK(to_stdout.out == csv);
    std::filesystem::remove(path);

    const auto cdf = run({"sweep-cdf", "--n", "8", "--k", "4", "--trials", "3", "--seed", "9"});
    CHECK(cdf.code == 0);
    CHECK_THAT(cdf.out, ContainsSubstring("# seed = 9"));
    CHECK_THAT(cdf.out, ContainsSubstring("level,slnr,sinr,gamma"));

    const auto corr = run({"sweep-correlation", "--n", "8", "--alpha", "0.5", "--rho-grid", "0,0.5", "--draws", "2"});
    CHECK(corr.code == 0);
    CHECK_THAT(corr.out, ContainsSubstring("# rho-grid = 0,0.5"));
}

TEST_CASE("cli - usage and parameter errors exit with 1 and name the key")
{
    const auto unknown = run({"loading", "--bogus", "1"});
    CHECK(unknown.code == 1);
    CHECK_THAT(unknown.err, ContainsSubstring("--bogus"));

    const auto cfg = write_temp("rzf_cli_bad.cfg", "antennas = 4\n");
    const auto bad_key = run({"loading", "--config", cfg.string()});
    CHECK(bad_key.code == 1);
    CHECK_THAT(bad_key.err, ContainsSubstring("antennas"));
    std::filesystem::remove(cfg);

    const auto missing = run({"loading", "--config", "/nonexistent/rzf.cfg"});
    CHECK(missing.code == 1);
    CHECK_THAT(missing.err, ContainsSubstring("/nonexistent/rzf.cfg"));

    const auto rho = run({"asymptotic", "--profile", "exp-even", "--rho", "1.2"});
    CHECK(rho.code == 1);
    CHECK_THAT(rho.err, ContainsSubstring("rho"));

    const auto profile = run({"asymptotic", "--profile", "gaussian"});
    CHECK(profile.code == 1);
    CHECK_THAT(profile.err, ContainsSubstring("profile"));

    const auto units = run({"loading", "--rate-units", "dB"});
    CHECK(units.code == 1);

    const auto tol = run({"loading", "--tol", "0"});
    CHECK(tol.code == 1);
    CHECK_THAT(tol.err, ContainsSubstring("tol"));

    const auto iters = run({"asymptotic", "--max-iter", "0"});
    CHECK(iters.code == 1);
    CHECK_THAT(iters.err, ContainsSubstring("max-iter"));

    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli - numerical failures exit with 2")
{
    // Two sweeps cannot meet a 1e-12 tolerance from a zero start
    const auto r = run({"asymptotic", "--n", "8", "--k", "8", "--max-iter", "2"});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("convergence"));
}

TEST_CASE("cli - selftest passes on a clean build")
{
    const auto r = run({"selftest"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("all checks passed"));

    // Same through the installed binary
    CHECK(std::system((std::string(RZF_CLI_PATH) + " selftest > /dev/null").c_str()) == 0);
}
