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

#include "tsnsim/mobility.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tsnsim/errors.hpp"

namespace tsnsim::mobility {

namespace {

constexpr int kMaxTargetTries = 1000000;

double distance_2d(double x, double y, const Position &gnb) { return std::hypot(x - gnb.x, y - gnb.y); }

// Distance from the gNB to the closest point of the hall.
double nearest_hall_distance(const HallBounds &b, const Position &gnb) {
    const double cx = std::clamp(gnb.x, b.x_min, b.x_max);
    const double cy = std::clamp(gnb.y, b.y_min, b.y_max);
    return distance_2d(cx, cy, gnb);
}

Position draw_target(const WaypointConfig &cfg, RngStream &rng) {
    for (int i = 0; i < kMaxTargetTries; ++i) {
        const double x = rng.uniform(cfg.bounds.x_min, cfg.bounds.x_max);
        const double y = rng.uniform(cfg.bounds.y_min, cfg.bounds.y_max);
        if (!cfg.max_distance_m || distance_2d(x, y, cfg.gnb) <= *cfg.max_distance_m)
            return {x, y, cfg.ut_height_m};
    }
    throw ConfigError("mobility.max_distance_m", "no feasible waypoint found inside the hall");
}

double draw_speed(const WaypointConfig &cfg, RngStream &rng) {
    return rng.uniform(cfg.speed_min_mps, cfg.speed_max_mps);
}

} // namespace

void validate(const WaypointConfig &cfg) {
    if (!(cfg.speed_min_mps > 0.0))
        throw ConfigError("mobility.speed_min_mps", "must be positive");
    if (!(cfg.speed_max_mps >= cfg.speed_min_mps))
        throw ConfigError("mobility.speed_max_mps", "must be >= speed_min_mps");
    if (!(cfg.pause_s >= 0.0))
        throw ConfigError("mobility.pause_s", "must be non-negative");
    const HallBounds &b = cfg.bounds;
    if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min))
        throw ConfigError("mobility.hall", "hall bounds must have positive extent");
    if (cfg.max_distance_m) {
        if (!(*cfg.max_distance_m > 0.0))
            throw ConfigError("mobility.max_distance_m", "must be positive");
        if (nearest_hall_distance(b, cfg.gnb) > *cfg.max_distance_m)
            throw ConfigError("mobility.max_distance_m",
                              "no point of the hall lies within the maximum distance of the gNB");
    }
}

WaypointState initial_state(const WaypointConfig &cfg, RngStream &rng) {
    WaypointState s;
    s.current = draw_target(cfg, rng);
    s.target = draw_target(cfg, rng);
    s.speed_mps = draw_speed(cfg, rng);
    return s;
}

WaypointState advance(const WaypointState &state, double dt_s, const WaypointConfig &cfg, RngStream &rng) {
    if (!(dt_s > 0.0))
        throw DomainError("mobility step must be positive");
    WaypointState s = state;
    if (s.pause_remaining_s > 0.0) {
        s.pause_remaining_s = std::max(0.0, s.pause_remaining_s - dt_s);
        if (s.pause_remaining_s == 0.0) {
            s.target = draw_target(cfg, rng);
            s.speed_mps = draw_speed(cfg, rng);
        }
        return s;
    }
    const double dx = s.target.x - s.current.x;
    const double dy = s.target.y - s.current.y;
    const double remaining = std::hypot(dx, dy);
    const double step = s.speed_mps * dt_s;
    if (step < remaining) {
        s.current.x += dx / remaining * step;
        s.current.y += dy / remaining * step;
        return s;
    }
    s.current = s.target;
    if (cfg.pause_s > 0.0) {
        s.pause_remaining_s = cfg.pause_s;
        return s;
    }
    s.target = draw_target(cfg, rng);
    s.speed_mps = draw_speed(cfg, rng);
    return s;
}

DistanceBin distance_bin(double d_2d_m) {
    if (d_2d_m <= kBinEdge1)
        return DistanceBin::D1;
    if (d_2d_m <= kBinEdge2)
        return DistanceBin::D2;
    if (d_2d_m <= kBinEdge3)
        return DistanceBin::D3;
    return DistanceBin::OutOfRange;
}

std::string_view to_string(DistanceBin b) {
    switch (b) {
    case DistanceBin::D1: return "d1";
    case DistanceBin::D2: return "d2";
    case DistanceBin::D3: return "d3";
    case DistanceBin::OutOfRange: return "out_of_range";
    }
    return "?";
}

Distances distances(const Position &ue, const Position &gnb) {
    const double d2 = std::hypot(ue.x - gnb.x, ue.y - gnb.y);
    return {d2, std::hypot(d2, ue.z - gnb.z)};
}

void write_trace_csv(std::ostream &os, const std::vector<TraceSample> &trace) {
    os << "t_s,x,y,z,d_2d,d_3d,bin\n";
    for (const TraceSample &t : trace) {
        fmt::print(os, "{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", t.t_s, t.pos.x, t.pos.y, t.pos.z, t.d_2d_m,
                   t.d_3d_m, to_string(t.bin));
    }
}

} // namespace tsnsim::mobility
