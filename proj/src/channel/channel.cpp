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

#include "rzf/channel.hpp"
#include "rzf/errors.hpp"
#include "rzf/kernels.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rzf
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }

        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::string format_double(double v)
        {
            // Shortest text that reads back to the same double
            char buf[32];
            const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
            return std::string(buf, end);
        }

        template <typename T>
        T parse_number(std::string_view key, std::string_view value)
        {
            T out{};
            const auto *end = value.data() + value.size();
            const auto res = std::from_chars(value.data(), end, out);
            if (res.ec != std::errc{} || res.ptr != end)
                throw parameter_error("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "'");
            return out;
        }

        std::string_view unquote(std::string_view v)
        {
            if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
                return v.substr(1, v.size() - 2);
            return v;
        }
    }

    std::string_view to_string(correlation_kind kind)
    {
        switch (kind)
        {
        case correlation_kind::identity:
            return "identity";
        case correlation_kind::exponential_even_theta:
            return "exp-even";
        case correlation_kind::exponential_random_theta:
            return "exp-random";
        case correlation_kind::exponential_common_theta:
            return "exp-common";
        }
        return "unknown";
    }

    correlation_kind parse_correlation_kind(std::string_view name)
    {
        for (auto kind : {correlation_kind::identity, correlation_kind::exponential_even_theta,
                          correlation_kind::exponential_random_theta, correlation_kind::exponential_common_theta})
            if (to_string(kind) == name)
                return kind;
        throw parameter_error("profile: unknown correlation profile '" + std::string(name) +
                              "' (expected identity, exp-even, exp-random or exp-common)");
    }

    void correlation_profile::validate() const
    {
        if (!(rho >= 0.0 && rho < 1.0))
            throw parameter_error("rho: must lie in [0, 1), got " + format_double(rho));
        if (!std::isfinite(theta))
            throw parameter_error("theta: must be finite");
        if (n == 0)
            throw parameter_error("n: antenna count must be at least 1");
        if (k == 0)
            throw parameter_error("k: user count must be at least 1");
    }

    double system_config::eta() const noexcept
    {
        return std::pow(10.0, -snr_db / 10.0);
    }

    void system_config::validate() const
    {
        profile.validate();
        if (!std::isfinite(snr_db))
            throw parameter_error("snr-db: must be finite");
        if (trials == 0)
            throw parameter_error("trials: must be at least 1");
    }

    std::vector<std::pair<std::string, std::string>> system_config::to_key_values() const
    {
        return {{"n", std::to_string(profile.n)},
                {"k", std::to_string(profile.k)},
                {"snr-db", format_double(snr_db)},
                {"profile", std::string(to_string(profile.kind))},
                {"rho", format_double(profile.rho)},
                {"theta", format_double(profile.theta)},
                {"trials", std::to_string(trials)},
                {"seed", std::to_string(seed)}};
    }

    system_config parse_system_config(std::string_view text, system_config base)
    {
        std::size_t line_no = 0;
        while (!text.empty())
        {
            const auto eol = text.find('\n');
            std::string_view line = text.substr(0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
            ++line_no;

            if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw parameter_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
            const auto key = trim(line.substr(0, eq));
            const auto value = unquote(trim(line.substr(eq + 1)));

            if (key == "n")
                base.profile.n = parse_number<std::size_t>(key, value);
            else if (key == "k")
                base.profile.k = parse_number<std::size_t>(key, value);
            else if (key == "snr-db")
                base.snr_db = parse_number<double>(key, value);
            else if (key == "profile")
                base.profile.kind = parse_correlation_kind(value);
            else if (key == "rho")
                base.profile.rho = parse_number<double>(key, value);
            else if (key == "theta")
                base.profile.theta = parse_number<double>(key, value);
            else if (key == "trials")
                base.trials = parse_number<std::size_t>(key, value);
            else if (key == "seed")
                base.seed = parse_number<std::uint64_t>(key, value);
            else
                throw parameter_error("config: unknown key '" + std::string(key) + "'");
        }
        base.validate();
        return base;
    }

    std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream)
    {
        return splitmix64(seed ^ splitmix64(stream));
    }

    hermitian_matrix build_correlation(const correlation_profile &profile, std::size_t user, std::mt19937_64 &rng)
    {
        profile.validate();
        if (user >= profile.k)
            throw parameter_error("build_correlation: user index " + std::to_string(user) + " out of range for K = " +
                                  std::to_string(profile.k));

        const std::size_t n = profile.n;
        if (profile.kind == correlation_kind::identity)
            return hermitian_matrix::identity(n);

        double theta = 0.0;
        switch (profile.kind)
        {
        case correlation_kind::exponential_even_theta:
            theta = 2.0 * std::numbers::pi * static_cast<double>(user) / static_cast<double>(profile.k);
            break;
        case correlation_kind::exponential_random_theta:
            theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
            break;
        case correlation_kind::exponential_common_theta:
            theta = profile.theta;
            break;
        case correlation_kind::identity:
            break;
        }

        complex_matrix r(n, n);
        for (std::size_t c = 0; c < n; ++c)
        {
            r(c, c) = 1.0;
            for (std::size_t row = c + 1; row < n; ++row)
            {
                const double lag = static_cast<double>(row - c);
                r(row, c) = std::polar(std::pow(profile.rho, lag), lag * theta);
                r(c, row) = std::conj(r(row, c));
            }
        }
        return hermitian_matrix::symmetrize(std::move(r));
    }

    std::vector<hermitian_matrix> build_correlations(const correlation_profile &profile, std::uint64_t seed)
    {
        profile.validate();
        std::mt19937_64 rng(substream_seed(seed, correlation_stream));
        std::vector<hermitian_matrix> out;
        out.reserve(profile.k);
        for (std::size_t user = 0; user < profile.k; ++user)
            out.push_back(build_correlation(profile, user, rng));
        return out;
    }

    hermitian_matrix sum_correlations(std::span<const hermitian_matrix> matrices)
    {
        if (matrices.empty())
            throw dimension_error("sum_correlations: empty list");
        complex_matrix acc = matrices.front().matrix();
        for (std::size_t i = 1; i < matrices.size(); ++i)
        {
            if (matrices[i].dim() != acc.rows())
                throw dimension_error("sum_correlations: matrix " + std::to_string(i) + " has dimension " +
                                      std::to_string(matrices[i].dim()) + ", expected " + std::to_string(acc.rows()));
            acc += matrices[i].matrix();
        }
        return hermitian_matrix::symmetrize(std::move(acc));
    }

    channel_sampler::channel_sampler(system_config config)
        : config_(std::move(config))
    {
        config_.validate();
        auto r = std::make_shared<std::vector<hermitian_matrix>>(build_correlations(config_.profile, config_.seed));

        white_ = config_.profile.kind == correlation_kind::identity || config_.profile.rho == 0.0;
        if (white_)
        {
            r_sqrt_ = r;
        }
        else
        {
            auto roots = std::make_shared<std::vector<hermitian_matrix>>();
            roots->reserve(r->size());
            for (const auto &rk : *r)
                roots->push_back(psd_sqrt(rk));
            r_sqrt_ = std::move(roots);
        }
        r_ = std::move(r);
    }

    channel_realization channel_sampler::sample(std::size_t trial) const
    {
        if (trial >= config_.trials)
            throw parameter_error("sample_channel: trial " + std::to_string(trial) + " out of range (trials = " +
                                  std::to_string(config_.trials) + ")");

        const std::size_t n = config_.n(), k = config_.k();
        const std::uint64_t seed = substream_seed(config_.seed, trial);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

        channel_realization out{complex_matrix(n, k), r_, r_sqrt_, seed};
        std::vector<cplx> hw(n);
        for (std::size_t user = 0; user < k; ++user)
        {
            for (auto &v : hw)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                v = cplx(re, im);
            }

            auto hk = out.h.col(user);
            if (white_)
            {
                std::copy(hw.begin(), hw.end(), hk.begin());
                continue;
            }
            const auto &s = (*r_sqrt_)[user].matrix();
            for (std::size_t c = 0; c < n; ++c)
                kernels::axpy(hw[c], s.col(c), hk);
        }
        return out;
    }

    channel_realization sample_channel(const system_config &config, std::size_t trial)
    {
        return channel_sampler(config).sample(trial);
    }
}
