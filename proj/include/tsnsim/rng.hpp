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

#ifndef TSNSIM_RNG_HPP
#define TSNSIM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace tsnsim {

/// One named, independently seeded random stream.
///
/// Streams are keyed by (scenario seed, name, index) so that adding draws
/// to one module never shifts the sequence seen by another.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi). Returns lo when lo == hi.
    double uniform(double lo, double hi);
    /// Uniform integer on [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    double normal(double mean, double stddev);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// The per-scenario stream set. Traffic streams are per flow.
struct RngStreams {
    explicit RngStreams(std::uint64_t seed)
        : channel(seed, "channel"), mobility(seed, "mobility"), phy(seed, "phy"), seed_(seed) {}

    RngStream traffic(std::uint64_t flow_index) const { return RngStream(seed_, "traffic", flow_index); }

    RngStream channel;
    RngStream mobility;
    RngStream phy;

private:
    std::uint64_t seed_;
};

} // namespace tsnsim

#endif
