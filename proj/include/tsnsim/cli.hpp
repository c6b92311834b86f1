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

#ifndef TSNSIM_CLI_HPP
#define TSNSIM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tsnsim::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kRuntime = 3, kIo = 4 };

/// Full command line including the program name. Messages go to `err`,
/// machine-readable output (channel-eval without --out, defaults dump) to `out`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses "1..10", "1,3,5" or a single seed.
std::vector<std::uint64_t> parse_seeds(const std::string &text);

/// Parses "1,10,100" or "start:stop:step" (inclusive stop).
std::vector<double> parse_grid(const std::string &text);

} // namespace tsnsim::cli

#endif
