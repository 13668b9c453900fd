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

#include "rzf/errors.hpp"
#include "rzf/loading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rzf
{
    namespace
    {
        double initial_guess(double z)
        {
            // Branch-point series in p = sqrt(2 (e z + 1))
            if (z < -0.3)
            {
                const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * z + 1.0)));
                return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
            }
            if (z < 3.0)
                return std::log1p(z);
            const double l1 = std::log(z);
            const double l2 = std::log(l1);
            return l1 - l2 + l2 / l1;
        }
    }

    double lambert_w0(double z)
    {
        constexpr double branch = -1.0 / std::numbers::e;
        if (std::isnan(z))
            throw parameter_error("lambert_w0: argument is NaN");
        if (z < branch)
        {
            // Tolerate the rounding of -1/e itself
            if (z < branch - 4.0 * std::numeric_limits<double>::epsilon())
                throw parameter_error("lambert_w0: argument " + std::to_string(z) + " is below -1/e");
            return -1.0;
        }
        if (z == 0.0)
            return 0.0;
        if (std::isinf(z))
            return z;

        const double eps = std::numeric_limits<double>::epsilon();
        double w = initial_guess(z);
        for (int it = 0; it < 64; ++it)
        {
            const double ew = std::exp(w);
            const double f = w * ew - z;
            const double wp1 = w + 1.0;
            if (f == 0.0 || wp1 == 0.0)
                break;
            const double dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
            w -= dw;
            if (std::abs(dw) <= 2.0 * eps * (1.0 + std::abs(w)))
                break;
        }

        const double residual = std::abs(w * std::exp(w) - z);
        if (!(residual <= 1e-12 * std::max(1.0, std::abs(z))))
            throw convergence_error("lambert_w0: Halley iteration did not reach the residual target", 64, residual);
        return w;
    }
}
