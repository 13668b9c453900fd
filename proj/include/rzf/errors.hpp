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

#ifndef RZF_ERRORS_HPP
#define RZF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rzf
{
    // Invalid parameter value or range (maps to CLI exit code 1)
    class parameter_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Operand shapes do not agree
    class dimension_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical failure: not PSD, singular, degenerate user, bracket failure (exit code 2)
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // An iterative method hit its iteration cap
    class convergence_error : public numerical_error
    {
    public:
        convergence_error(const std::string &what, std::size_t iterations, double residual)
            : numerical_error(what), iterations_(iterations), residual_(residual) {}

        std::size_t iterations() const noexcept { return iterations_; }
        double residual() const noexcept { return residual_; }

    private:
        std::size_t iterations_;
        double residual_;
    };
}

#endif
