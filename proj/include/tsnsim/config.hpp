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

#ifndef TSNSIM_CONFIG_HPP
#define TSNSIM_CONFIG_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "tsnsim/scenario.hpp"

/// Sectioned key-value configuration: [channel], [radio], [mobility], [sim]
/// and one [flow.<name>] section per custom flow. Lines starting with ';' or
/// '#' are comments. Omitted keys keep their library defaults.
namespace tsnsim {

/// Throws ParseError (with a line number) or ConfigError (naming the key).
Scenario parse_config(std::string_view text, std::span<const std::string> overrides = {});

/// Throws IoError when the file cannot be read.
Scenario load_config(const std::filesystem::path &path, std::span<const std::string> overrides = {});

/// Applies one `section.key=value` override; `flow.<name>.<key>` targets a flow.
void apply_override(Scenario &sc, std::string_view assignment);

/// Every setting with its default value, one `section.key = value` per line.
std::string dump_defaults();

} // namespace tsnsim

#endif
