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

#ifndef RZF_CHANNEL_HPP
#define RZF_CHANNEL_HPP

#include "rzf/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rzf
{
    enum class correlation_kind
    {
        identity,
        exponential_even_theta,   // theta_k = 2 pi k / K
        exponential_random_theta, // theta_k ~ U[0, 2 pi)
        exponential_common_theta  // theta_k = theta for every user
    };

    std::string_view to_string(correlation_kind kind);    // "identity", "exp-even", "exp-random", "exp-common"
    correlation_kind parse_correlation_kind(std::string_view name);

    // Per-user exponential correlation [R_k]_{m,n} = rho^{|m-n|} e^{j (m-n) theta_k}
    struct correlation_profile
    {
        correlation_kind kind = correlation_kind::identity;
        double rho = 0.0;    // 0 <= rho < 1
        double theta = 0.0;  // radians, common-theta only
        std::size_t n = 1;   // antennas
        std::size_t k = 1;   // users

        void validate() const; // throws parameter_error
    };

    struct system_config
    {
        correlation_profile profile;
        double snr_db = 20.0;
        std::size_t trials = 1;
        std::uint64_t seed = 1;

        std::size_t n() const noexcept { return profile.n; }
        std::size_t k() const noexcept { return profile.k; }

        // eta = sigma^2 / P_tx = 10^(-snr_db / 10)
        double eta() const noexcept;

        void validate() const; // throws parameter_error

        // Flat "key = value" representation (keys: n, k, snr-db, profile, rho, theta, trials, seed)
        std::vector<std::pair<std::string, std::string>> to_key_values() const;
    };

    // Parses "key = value" lines; '#' and ';' start comments. Unknown keys throw
    // parameter_error naming the key. Keys absent from the text keep the
    // values of `base`.
    system_config parse_system_config(std::string_view text, system_config base = {});

    // Seed of independent substream `stream` derived from a master seed (splitmix64 mixing)
    std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

    // Stream index reserved for drawing random theta_k (trials use their index)
    inline constexpr std::uint64_t correlation_stream = 0xFFFFFFFFFFFFFFFFull;

    hermitian_matrix build_correlation(const correlation_profile &profile, std::size_t user, std::mt19937_64 &rng);

    // All K correlation matrices, drawing any random phases from substream
    // `correlation_stream` of `seed`
    std::vector<hermitian_matrix> build_correlations(const correlation_profile &profile, std::uint64_t seed);

    // Entrywise sum
    hermitian_matrix sum_correlations(std::span<const hermitian_matrix> matrices);

    struct channel_realization
    {
        complex_matrix h; // N x K, column k is h_k = R_k^{1/2} h_{w,k}
        std::shared_ptr<const std::vector<hermitian_matrix>> r;
        std::shared_ptr<const std::vector<hermitian_matrix>> r_sqrt;
        std::uint64_t seed_used = 0; // substream seed of this trial
    };

    // Holds R_k and R_k^{1/2} for a configuration and draws per-trial channels.
    // sample(t) depends only on (seed, t), so trials can run in any order or
    // on any thread.
    class channel_sampler
    {
    public:
        explicit channel_sampler(system_config config);

        const system_config &config() const noexcept { return config_; }
        const std::vector<hermitian_matrix> &correlations() const noexcept { return *r_; }

        channel_realization sample(std::size_t trial) const;

    private:
        system_config config_;
        std::shared_ptr<const std::vector<hermitian_matrix>> r_;
        std::shared_ptr<const std::vector<hermitian_matrix>> r_sqrt_;
        bool white_ = false; // every R_k = I, skip the colouring multiply
    };

    // Convenience wrapper; rebuilds the correlation matrices on every call
    channel_realization sample_channel(const system_config &config, std::size_t trial);
}

#endif
