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

#ifndef RZF_KERNELS_HPP
#define RZF_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Complex double-precision BLAS-1 style kernels. Every dense routine in the
// library reduces to these three loops, so they come in a scalar reference
// flavour and (on x86-64) an AVX2/FMA flavour picked at runtime.
//
// The variants agree to rounding only: they sum in different orders. Within
// one process the active variant is fixed unless changed via set_active_isa,
// so results are reproducible run to run on the same host.

namespace rzf::kernels
{
    using cplx = std::complex<double>;

    enum class isa
    {
        scalar,
        avx2
    };

    struct kernel_table
    {
        cplx (*dotc)(const cplx *a, const cplx *b, std::size_t n);             // sum conj(a_i) b_i
        void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);        // y += alpha x
        double (*norm_sq)(const cplx *x, std::size_t n);                        // sum |x_i|^2
    };

    std::string_view isa_name(isa which);

    // True if the variant was compiled in and the CPU supports it
    bool isa_supported(isa which);

    // Best supported variant on this host
    isa detected_isa();

    isa active_isa();

    // Throws parameter_error if the variant is not supported on this host
    void set_active_isa(isa which);

    // Kernel table of a specific variant (for equivalence testing)
    const kernel_table &table(isa which);

    cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
    void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
    double norm_sq(std::span<const cplx> x);
}

#endif
