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

// Compiled with -mavx2 -mfma. Nothing in here may run unless the dispatcher
// has confirmed CPU support.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace rzf::kernels::detail
{
    namespace
    {
        // std::complex<double> is layout-compatible with double[2], so one
        // __m256d holds two interleaved complex values [re0 im0 re1 im1].

        inline double hsum(__m256d v)
        {
            __m128d lo = _mm256_castpd256_pd128(v);
            __m128d hi = _mm256_extractf128_pd(v, 1);
            lo = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
        }

        // sum of even lanes minus sum of odd lanes
        inline double halt(__m256d v)
        {
            __m128d lo = _mm256_castpd256_pd128(v);
            __m128d hi = _mm256_extractf128_pd(v, 1);
            lo = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_sub_sd(lo, _mm_unpackhi_pd(lo, lo)));
        }

        cplx dotc_avx2(const cplx *a, const cplx *b, std::size_t n)
        {
            const double *pa = reinterpret_cast<const double *>(a);
            const double *pb = reinterpret_cast<const double *>(b);

            // re accumulates [ar*br, ai*bi], im accumulates [ar*bi, ai*br]
            __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
            __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();

            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
                const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
                const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
                const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
                re0 = _mm256_fmadd_pd(a0, b0, re0);
                re1 = _mm256_fmadd_pd(a1, b1, re1);
                im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), im0);
                im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), im1);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
                const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
                re0 = _mm256_fmadd_pd(a0, b0, re0);
                im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), im0);
            }

            double re = hsum(_mm256_add_pd(re0, re1));
            double im = halt(_mm256_add_pd(im0, im1));
            if (i < n)
            {
                const double ar = a[i].real(), ai = a[i].imag();
                const double br = b[i].real(), bi = b[i].imag();
                re += ar * br + ai * bi;
                im += ar * bi - ai * br;
            }
            return {re, im};
        }

        void axpy_avx2(cplx alpha, const cplx *x, cplx *y, std::size_t n)
        {
            const double *px = reinterpret_cast<const double *>(x);
            double *py = reinterpret_cast<double *>(y);

            // y += pr*[xr xi] + [-pi pi]*[xi xr]
            const __m256d vr = _mm256_set1_pd(alpha.real());
            const __m256d vi = _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());

            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
                const __m256d x1 = _mm256_loadu_pd(px + 2 * i + 4);
                __m256d y0 = _mm256_loadu_pd(py + 2 * i);
                __m256d y1 = _mm256_loadu_pd(py + 2 * i + 4);
                y0 = _mm256_fmadd_pd(vr, x0, y0);
                y1 = _mm256_fmadd_pd(vr, x1, y1);
                y0 = _mm256_fmadd_pd(vi, _mm256_permute_pd(x0, 0x5), y0);
                y1 = _mm256_fmadd_pd(vi, _mm256_permute_pd(x1, 0x5), y1);
                _mm256_storeu_pd(py + 2 * i, y0);
                _mm256_storeu_pd(py + 2 * i + 4, y1);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
                __m256d y0 = _mm256_loadu_pd(py + 2 * i);
                y0 = _mm256_fmadd_pd(vr, x0, y0);
                y0 = _mm256_fmadd_pd(vi, _mm256_permute_pd(x0, 0x5), y0);
                _mm256_storeu_pd(py + 2 * i, y0);
            }
            if (i < n)
            {
                const double pr = alpha.real(), pi = alpha.imag();
                const double xr = x[i].real(), xi = x[i].imag();
                y[i] = cplx(y[i].real() + pr * xr - pi * xi,
                            y[i].imag() + pr * xi + pi * xr);
            }
        }

        double norm_sq_avx2(const cplx *x, std::size_t n)
        {
            const double *px = reinterpret_cast<const double *>(x);
            __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();

            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
                const __m256d x1 = _mm256_loadu_pd(px + 2 * i + 4);
                s0 = _mm256_fmadd_pd(x0, x0, s0);
                s1 = _mm256_fmadd_pd(x1, x1, s1);
            }
            for (; i + 2 <= n; i += 2)
            {
                const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
                s0 = _mm256_fmadd_pd(x0, x0, s0);
            }
            double s = hsum(_mm256_add_pd(s0, s1));
            if (i < n)
                s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
            return s;
        }
    }

    const kernel_table avx2_table = {&dotc_avx2, &axpy_avx2, &norm_sq_avx2};
}
