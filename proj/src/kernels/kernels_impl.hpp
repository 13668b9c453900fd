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

#ifndef RZF_KERNELS_IMPL_HPP
#define RZF_KERNELS_IMPL_HPP

#include "rzf/kernels.hpp"

namespace rzf::kernels::detail
{
    extern const kernel_table scalar_table;
#ifdef RZF_HAVE_AVX2
    extern const kernel_table avx2_table;
#endif
}

#endif
