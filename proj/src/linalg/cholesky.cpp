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
#include "rzf/kernels.hpp"
#include "rzf/linalg.hpp"

#include <cmath>
#include <string>

namespace rzf
{
    // Right-looking column Cholesky on the lower triangle. Only the lower
    // triangle of l_ is meaningful afterwards; the strict upper part is zeroed.
    cholesky_factor::cholesky_factor(const hermitian_matrix &a)
        : l_(a.matrix())
    {
        const std::size_t n = l_.rows();
        for (std::size_t j = 0; j < n; ++j)
        {
            const double d = l_(j, j).real();
            if (!(d > 0.0) || !std::isfinite(d))
                throw numerical_error("cholesky_factor: matrix of dimension " + std::to_string(n) +
                                      " is not positive definite (pivot " + std::to_string(j) + ")");
            const double ljj = std::sqrt(d);
            l_(j, j) = ljj;

            auto below = l_.col(j).subspan(j + 1);
            const double inv = 1.0 / ljj;
            for (auto &v : below)
                v *= inv;

            for (std::size_t c = j + 1; c < n; ++c)
                kernels::axpy(-std::conj(l_(c, j)), l_.col(j).subspan(c), l_.col(c).subspan(c));
        }
        for (std::size_t c = 1; c < n; ++c)
            for (std::size_t r = 0; r < c; ++r)
                l_(r, c) = 0.0;
    }

    void cholesky_factor::solve_in_place(std::span<cplx> x) const
    {
        const std::size_t n = l_.rows();
        if (x.size() != n)
            throw dimension_error("cholesky_factor::solve: right-hand side has length " + std::to_string(x.size()) +
                                  ", expected " + std::to_string(n));

        // L y = b
        for (std::size_t j = 0; j < n; ++j)
        {
            x[j] /= l_(j, j).real();
            if (x[j] != cplx(0.0, 0.0))
                kernels::axpy(-x[j], l_.col(j).subspan(j + 1), x.subspan(j + 1));
        }
        // L^* x = y
        for (std::size_t j = n; j-- > 0;)
        {
            const cplx s = kernels::dotc(l_.col(j).subspan(j + 1), x.subspan(j + 1));
            x[j] = (x[j] - s) / l_(j, j).real();
        }
    }

    complex_matrix cholesky_factor::solve(const complex_matrix &b) const
    {
        if (b.rows() != dim())
            throw dimension_error("cholesky_factor::solve: right-hand side has " + std::to_string(b.rows()) +
                                  " rows, expected " + std::to_string(dim()));
        complex_matrix x = b;
        for (std::size_t c = 0; c < x.cols(); ++c)
            solve_in_place(x.col(c));
        return x;
    }

    hermitian_matrix cholesky_factor::inverse() const
    {
        return hermitian_matrix::symmetrize(solve(complex_matrix::identity(dim())));
    }
}
