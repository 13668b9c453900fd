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


#ifndef RZF_CLI_HPP
#define RZF_CLI_HPP

#include <iosfwd>

// Command-line front end. Every flag lives on the root command, so flags may
// appear before or after the subcommand and may also come from a
// key = value file given by --config; explicit flags win over the file.
//
// Exit status: 0 success, 1 usage or parameter error, 2 numerical failure
// (including any failed selftest check).

namespace rzf::cli
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_usage = 1;
    inline constexpr int exit_numerical = 2;

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
