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

#ifndef TSNSIM_MOBILITY_HPP
#define TSNSIM_MOBILITY_HPP

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "tsnsim/rng.hpp"

/// Random Waypoint motion of the UE inside a rectangular factory hall, and the
/// radial distance bins used to attribute radio statistics.
namespace tsnsim::mobility {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct HallBounds {
    double x_min = -130.0;
    double x_max = 130.0;
    double y_min = -130.0;
    double y_max = 130.0;

    bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

struct WaypointConfig {
    HallBounds bounds{};
    Position gnb{};                             // only x/y matter for the distance constraint
    std::optional<double> max_distance_m = 250.0; // 2D distance from the gNB
    double speed_min_mps = 0.2;
    double speed_max_mps = 1.5;
    double pause_s = 0.0;
    double ut_height_m = 1.5;
};

struct WaypointState {
    Position current{};
    Position target{};
    double speed_mps = 0.0;
    double pause_remaining_s = 0.0;
};

/// Throws ConfigError when the speed range, pause or target region is unusable.
void validate(const WaypointConfig &cfg);

/// Uniform start position and first leg.
WaypointState initial_state(const WaypointConfig &cfg, RngStream &rng);

/// Advances by `dt_s` seconds. Reaching the target ends the step at the target;
/// with no pause the next leg is drawn in the same step.
WaypointState advance(const WaypointState &state, double dt_s, const WaypointConfig &cfg, RngStream &rng);

enum class DistanceBin { D1, D2, D3, OutOfRange };

inline constexpr double kBinEdge1 = 85.0;
inline constexpr double kBinEdge2 = 170.0;
inline constexpr double kBinEdge3 = 255.0;

/// Bins are closed on the outer edge: 85 m is d1, 85.000001 m is d2.
DistanceBin distance_bin(double d_2d_m);

std::string_view to_string(DistanceBin b);

struct Distances {
    double d_2d_m = 0.0;
    double d_3d_m = 0.0;
};

Distances distances(const Position &ue, const Position &gnb);

struct TraceSample {
    double t_s = 0.0;
    Position pos{};
    double d_2d_m = 0.0;
    double d_3d_m = 0.0;
    DistanceBin bin = DistanceBin::D1;
};

/// CSV columns: t_s, x, y, z, d_2d, d_3d, bin.
void write_trace_csv(std::ostream &os, const std::vector<TraceSample> &trace);

} // namespace tsnsim::mobility

#endif
