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
#include "rzf/errors.hpp"

#include <atomic>
#include <string>

namespace rzf::kernels
{
    namespace
    {
        bool cpu_has_avx2()
        {
#if defined(RZF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }

        std::atomic<const kernel_table *> &active_slot()
        {
            static std::atomic<const kernel_table *> slot{&table(detected_isa())};
            return slot;
        }
    }

    std::string_view isa_name(isa which)
    {
        switch (which)
        {
        case isa::scalar:
            return "scalar";
        case isa::avx2:
            return "avx2";
        }
        return "unknown";
    }

    bool isa_supported(isa which)
    {
        if (which == isa::scalar)
            return true;
        static const bool avx2 = cpu_has_avx2();
        return avx2;
    }

    isa detected_isa()
    {
        return isa_supported(isa::avx2) ? isa::avx2 : isa::scalar;
    }

    const kernel_table &table(isa which)
    {
#ifdef RZF_HAVE_AVX2
        if (which == isa::avx2)
            return detail::avx2_table;
#endif
        if (which != isa::scalar)
            throw parameter_error("kernel variant '" + std::string(isa_name(which)) + "' is not compiled in");
        return detail::scalar_table;
    }

    isa active_isa()
    {
#ifdef RZF_HAVE_AVX2
        if (active_slot().load(std::memory_order_relaxed) == &detail::avx2_table)
            return isa::avx2;
#endif
        return isa::scalar;
    }

    void set_active_isa(isa which)
    {
        if (!isa_supported(which))
            throw parameter_error("kernel variant '" + std::string(isa_name(which)) + "' is not supported on this CPU");
        active_slot().store(&table(which), std::memory_order_relaxed);
    }

    cplx dotc(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.size() != b.size())
            throw dimension_error("dotc: operand lengths differ");
        return active_slot().load(std::memory_order_relaxed)->dotc(a.data(), b.data(), a.size());
    }

    void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y)
    {
        if (x.size() != y.size())
            throw dimension_error("axpy: operand lengths differ");
        active_slot().load(std::memory_order_relaxed)->axpy(alpha, x.data(), y.data(), x.size());
    }

    double norm_sq(std::span<const cplx> x)
    {
        return active_slot().load(std::memory_order_relaxed)->norm_sq(x.data(), x.size());
    }
}
