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

#ifndef TSNSIM_CSV_READER_HPP
#define TSNSIM_CSV_READER_HPP

#include <string>
#include <vector>

namespace tsnsim::detail {

/// Reads a numeric CSV whose header must equal `columns`. Blank lines and
/// lines starting with '#' are skipped.
std::vector<std::vector<double>> read_csv(const std::string &path, const std::vector<std::string> &columns);

/// Splits on commas and trims surrounding whitespace from each field.
std::vector<std::string> split_fields(const std::string &line);

} // namespace tsnsim::detail

#endif
