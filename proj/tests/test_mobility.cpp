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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tsnsim/errors.hpp"
#include "tsnsim/mobility.hpp"
#include "tsnsim/rng.hpp"

using namespace tsnsim;
using namespace tsnsim::mobility;

TEST_CASE("distance bins") {
    CHECK(distance_bin(0.0) == DistanceBin::D1);
    CHECK(distance_bin(85.0) == DistanceBin::D1);
    CHECK(distance_bin(85.000001) == DistanceBin::D2);
    CHECK(distance_bin(170.0) == DistanceBin::D2);
    CHECK(distance_bin(170.000001) == DistanceBin::D3);
    CHECK(distance_bin(255.0) == DistanceBin::D3);
    CHECK(distance_bin(255.000001) == DistanceBin::OutOfRange);
    CHECK(distance_bin(300.0) == DistanceBin::OutOfRange);
    CHECK(to_string(DistanceBin::D2) == "d2");
    CHECK(to_string(DistanceBin::OutOfRange) == "out_of_range");
}

TEST_CASE("distances") {
    auto d = distances({0, 0, 1.5}, {0, 0, 8});
    CHECK(d.d_2d_m == 0.0);
    CHECK(d.d_3d_m == doctest::Approx(6.5));
    d = distances({3, 4, 1.5}, {0, 0, 1.5});
    CHECK(d.d_2d_m == doctest::Approx(5.0));
    CHECK(d.d_3d_m == doctest::Approx(5.0));
    d = distances({30, 40, 1.5}, {0, 0, 8});
    CHECK(d.d_2d_m == doctest::Approx(50.0));
    CHECK(d.d_3d_m == doctest::Approx(50.4207298638).epsilon(1e-11));
}

TEST_CASE("straight-line step") {
    WaypointConfig cfg;
    RngStream rng(1, "mobility");
    WaypointState s;
    s.current = {0, 0, 1.5};
    s.target = {10, 0, 1.5};
    s.speed_mps = 1.0;
    const auto n = advance(s, 1.0, cfg, rng);
    CHECK(n.current.x == doctest::Approx(1.0));
    CHECK(n.current.y == 0.0);
    CHECK(n.target.x == 10.0);
}

TEST_CASE("arrival without pause draws the next leg in the same step") {
    WaypointConfig cfg;
    RngStream rng(1, "mobility");
    WaypointState s;
    s.current = {0, 0, 1.5};
    s.target = {1, 0, 1.5};
    s.speed_mps = 1.0;
    const auto n = advance(s, 1.0, cfg, rng);
    CHECK(n.current.x == 1.0);
    CHECK(n.current.y == 0.0);
    CHECK((n.target.x != 1.0 || n.target.y != 0.0));
    CHECK(n.speed_mps >= cfg.speed_min_mps);
    CHECK(n.speed_mps <= cfg.speed_max_mps);
}

TEST_CASE("pause at the waypoint") {
    WaypointConfig cfg;
    cfg.pause_s = 2.0;
    RngStream rng(1, "mobility");
    WaypointState s;
    s.current = {0, 0, 1.5};
    s.target = {1, 0, 1.5};
    s.speed_mps = 1.0;
    auto n = advance(s, 1.0, cfg, rng);
    CHECK(n.current.x == 1.0);
    CHECK(n.pause_remaining_s == doctest::Approx(2.0));
    n = advance(n, 1.0, cfg, rng);
    CHECK(n.current.x == 1.0);
    CHECK(n.pause_remaining_s == doctest::Approx(1.0));
}

TEST_CASE("long trajectory stays feasible and continuous") {
    WaypointConfig cfg;
    RngStream rng(42, "mobility");
    auto s = initial_state(cfg, rng);
    const double dt = 1.0;
    for (int i = 0; i < 1000000; ++i) {
        const auto n = advance(s, dt, cfg, rng);
        REQUIRE(cfg.bounds.contains(n.current.x, n.current.y));
        REQUIRE(std::hypot(n.current.x - cfg.gnb.x, n.current.y - cfg.gnb.y) <= *cfg.max_distance_m + 1e-9);
        REQUIRE(n.speed_mps >= cfg.speed_min_mps);
        REQUIRE(n.speed_mps <= cfg.speed_max_mps);
        REQUIRE(std::hypot(n.current.x - s.current.x, n.current.y - s.current.y) <=
                cfg.speed_max_mps * dt + 1e-9);
        REQUIRE(n.current.z == cfg.ut_height_m);
        s = n;
    }
}

TEST_CASE("deterministic replay") {
    WaypointConfig cfg;
    RngStream a(9, "mobility"), b(9, "mobility");
    auto sa = initial_state(cfg, a);
    auto sb = initial_state(cfg, b);
    for (int i = 0; i < 5000; ++i) {
        sa = advance(sa, 0.1, cfg, a);
        sb = advance(sb, 0.1, cfg, b);
        REQUIRE(sa.current.x == sb.current.x);
        REQUIRE(sa.current.y == sb.current.y);
    }
}

TEST_CASE("configuration errors") {
    WaypointConfig cfg;
    cfg.speed_min_mps = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.speed_max_mps = 0.1;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.pause_s = -1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    // gNB far outside the hall: nearest hall point beyond the distance limit
    cfg = {};
    cfg.gnb = {1000.0, 1000.0, 1.5};
    try {
        validate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(e.key() == "mobility.max_distance_m");
    }
    RngStream rng(1, "mobility");
    CHECK_THROWS_AS(advance(initial_state(WaypointConfig{}, rng), 0.0, WaypointConfig{}, rng), DomainError);
}

TEST_CASE("trace CSV") {
    std::ostringstream os;
    write_trace_csv(os, {{0.5, {30, 40, 1.5}, 50.0, 50.0, DistanceBin::D1}});
    CHECK(os.str() == "t_s,x,y,z,d_2d,d_3d,bin\n0.500000,30.000000,40.000000,1.500000,50.000000,50.000000,d1\n");
}
