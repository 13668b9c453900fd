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

#include "kernels_impl.hpp"

namespace rzf::kernels::detail
{
    namespace
    {
        // Real and imaginary parts are accumulated separately so that the
        // reference loop is free of std::complex operator overhead and NaN checks.
        cplx dotc_scalar(const cplx *a, const cplx *b, std::size_t n)
        {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double ar = a[i].real(), ai = a[i].imag();
                const double br = b[i].real(), bi = b[i].imag();
                re += ar * br + ai * bi;
                im += ar * bi - ai * br;
            }
            return {re, im};
        }

        void axpy_scalar(cplx alpha, const cplx *x, cplx *y, std::size_t n)
        {
            const double pr = alpha.real(), pi = alpha.imag();
            for (std::size_t i = 0; i < n; ++i)
            {
                const double xr = x[i].real(), xi = x[i].imag();
                y[i] = cplx(y[i].real() + pr * xr - pi * xi,
                            y[i].imag() + pr * xi + pi * xr);
            }
        }

        double norm_sq_scalar(const cplx *x, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
            return s;
        }
    }

    const kernel_table scalar_table = {&dotc_scalar, &axpy_scalar, &norm_sq_scalar};
}
