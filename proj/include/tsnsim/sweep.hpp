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

#ifndef TSNSIM_SWEEP_HPP
#define TSNSIM_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsnsim/metrics.hpp"
#include "tsnsim/scenario.hpp"

/// Experiment grids: test cases, InF profiles, and profile x ring distance.
namespace tsnsim {

enum class SweepDim { TestCases, Profiles, Distances };

std::string_view to_string(SweepDim d);
/// "test-cases", "profiles" or "distances". Throws DomainError otherwise.
SweepDim parse_sweep_dim(std::string_view text);

/// The four profiles that drive simulations.
inline constexpr std::array<chan::InfProfile, 4> kSweepProfiles{chan::InfProfile::SL, chan::InfProfile::DL,
                                                                chan::InfProfile::SH, chan::InfProfile::DH};
/// Bin-centre ring radii.
inline constexpr std::array<double, 3> kRingRadii{42.5, 127.5, 212.5};

struct SweepCell {
    std::string name; // directory name
    Scenario scenario;
};

std::vector<SweepCell> sweep_cells(const Scenario &base, SweepDim dim);

struct SweepRun {
    std::size_t cell = 0;
    std::uint64_t seed = 0;
    metrics::MetricsStore store;
};

/// Every (cell, seed) pair, cell-major, run concurrently. `on_done` is called
/// from worker threads with the number of finished runs.
std::vector<SweepRun> run_sweep(const std::vector<SweepCell> &cells, std::span<const std::uint64_t> seeds,
                                std::function<void(std::size_t done, std::size_t total)> on_done = {},
                                unsigned max_threads = 0);

/// <out>/<dim>/<cell>/<seed>/ exports plus <out>/<dim>/aggregate.csv.
void write_sweep(const std::vector<SweepCell> &cells, const std::vector<SweepRun> &runs, SweepDim dim,
                 const std::filesystem::path &out);

/// One line per (cell, seed, flow) with latency quartiles and run-level SINR and HARQ figures.
std::string aggregate_csv(const std::vector<SweepCell> &cells, const std::vector<SweepRun> &runs);

} // namespace tsnsim

#endif
