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
#include "rzf/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace rzf
{
    namespace
    {
        std::string format_value(double v)
        {
            if (std::isnan(v))
                return "nan";
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }
    }

    void experiment_result::add_column(std::string column_name, std::vector<double> values)
    {
        if (!columns.empty() && values.size() != columns.front().size())
            throw dimension_error("experiment_result: column '" + column_name + "' has " +
                                  std::to_string(values.size()) + " rows, expected " +
                                  std::to_string(columns.front().size()));
        column_names.push_back(std::move(column_name));
        columns.push_back(std::move(values));
    }

    const std::vector<double> &experiment_result::column(std::string_view column_name) const
    {
        for (std::size_t i = 0; i < column_names.size(); ++i)
            if (column_names[i] == column_name)
                return columns[i];
        throw parameter_error("experiment_result: no column '" + std::string(column_name) + "'");
    }

    void write_csv(std::ostream &os, const experiment_result &result)
    {
        os << "# experiment = " << result.name << '\n';
        for (const auto &[key, value] : result.metadata)
            os << "# " << key << " = " << value << '\n';

        for (std::size_t c = 0; c < result.column_names.size(); ++c)
            os << (c ? "," : "") << result.column_names[c];
        os << '\n';

        for (std::size_t r = 0; r < result.rows(); ++r)
        {
            for (std::size_t c = 0; c < result.columns.size(); ++c)
                os << (c ? "," : "") << format_value(result.columns[c][r]);
            os << '\n';
        }
    }

    void write_csv(const std::string &path, const experiment_result &result)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw parameter_error("out: cannot open '" + path + "' for writing");
        write_csv(out, result);
        if (!out)
            throw parameter_error("out: write to '" + path + "' failed");
    }
}
