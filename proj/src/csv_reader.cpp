// SPDX-License-Identifier: Apache-2.0
//
// tsnsim: 5G-TSN link simulator for indoor-factory radio environments
// Copyright (C) 2026 The tsnsim authors
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

#include "csv_reader.hpp"

#include <boost/algorithm/string.hpp>
#include <fstream>

#include <fmt/format.h>

#include "tsnsim/errors.hpp"

namespace tsnsim::detail {

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> fields;
    boost::split(fields, line, boost::is_any_of(","));
    for (auto &f : fields)
        boost::trim(f);
    return fields;
}

std::vector<std::vector<double>> read_csv(const std::string &path, const std::vector<std::string> &columns) {
    std::ifstream in(path);
    if (!in)
        throw IoError(fmt::format("cannot open '{}'", path));
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        boost::trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto fields = split_fields(line);
        if (!header_seen) {
            if (fields != columns)
                throw ParseError(lineno, fmt::format("{}: expected header '{}'", path, boost::join(columns, ",")));
            header_seen = true;
            continue;
        }
        if (fields.size() != columns.size())
            throw ParseError(lineno, fmt::format("{}: expected {} fields", path, columns.size()));
        std::vector<double> row;
        for (const auto &f : fields) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(f, &used));
                if (used != f.size())
                    throw std::invalid_argument(f);
            } catch (const std::exception &) {
                throw ParseError(lineno, fmt::format("{}: '{}' is not a number", path, f));
            }
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen)
        throw ParseError(lineno, fmt::format("{}: missing header", path));
    return rows;
}

} // namespace tsnsim::detail
