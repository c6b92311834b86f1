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
#include <set>

#include "test_util.hpp"
#include "tsnsim/engine.hpp"
#include "tsnsim/errors.hpp"

using namespace tsnsim;

namespace {

Scenario quick(double duration = 5.0) {
    Scenario sc = default_scenario();
    sc.duration_s = duration;
    return sc;
}

std::string exported(const metrics::MetricsStore &s, const std::string &tag) {
    testutil::TempDir dir(tag);
    metrics::export_all(s, dir.path());
    std::string all;
    for (auto f : {"latency.csv", "harq.csv", "sinr.csv", "summary.json"})
        all += testutil::slurp(dir.path() / f);
    return all;
}

} // namespace

TEST_CASE("topology") {
    const auto sim = Simulation::build(quick());
    const auto t = sim.topology();
    CHECK(t.nodes.size() == 3);
    CHECK(t.hops.size() == 2);
}

TEST_CASE("zero flows run to completion") {
    Scenario sc = quick();
    sc.test_case.reset();
    const auto store = Simulation::build(sc).run();
    CHECK(store.flows().empty());
    CHECK(store.latencies().empty());
    CHECK(store.harq().empty());
    CHECK_FALSE(store.sinr().empty());
}

TEST_CASE("invalid numerology is a build error") {
    Scenario sc = quick();
    sc.radio.numerology = 7;
    try {
        (void)Simulation::build(sc);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(e.key() == "radio.numerology");
    }
}

TEST_CASE("zero horizon delivers nothing") {
    Scenario sc = quick();
    sc.phase_jitter = false;
    const auto store = Simulation::build(sc).run(SimTime{});
    for (const auto &c : store.counters())
        CHECK(c.delivered == 0);
}

TEST_CASE("an instance runs once") {
    auto sim = Simulation::build(quick(1.0));
    (void)sim.run();
    CHECK_THROWS_AS(sim.run(), InvariantViolation);
}

TEST_CASE("determinism") {
    const auto a = Simulation::build(quick()).run();
    const auto b = Simulation::build(quick()).run();
    CHECK(exported(a, "det_a") == exported(b, "det_b"));
}

TEST_CASE("hand-traced downlink latency on an ideal channel") {
    Scenario sc = quick(2.0);
    sc.test_case.reset();
    tsn::FlowSpec nc = tsn::test_case(1)[0]; // 300 B every 50 ms, downlink
    sc.flows = {nc};
    sc.phase_jitter = false;
    sc.radio.fixed_bler = 0.0;
    sc.radio.num_rbs = 273; // even MCS 0 carries 300 B in one slot
    sc.warmup_s = 0.0;
    const auto store = Simulation::build(sc).run();
    // 24 us serialization + 1 us propagation reaches the gNB at 25 us, the next
    // 62.5 us slot boundary carries it, decoding completes one slot later.
    const std::int64_t expected_ps = 125'000'000;
    // The frame generated at the horizon is still in flight.
    REQUIRE(store.latencies().size() == 40);
    for (const auto &r : store.latencies())
        CHECK(r.latency().ps() == expected_ps);
}

TEST_CASE("periodic generators emit floor(T / period) + 1 frames") {
    Scenario sc = quick(1.0);
    sc.phase_jitter = false;
    const auto store = Simulation::build(sc).run();
    CHECK(store.counters()[0].generated == 21); // NC every 50 ms
    CHECK(store.counters()[1].generated == 15); // Video every 70 ms
    CHECK(store.counters()[2].generated == 2);  // BE every 700 ms
}

TEST_CASE("frame conservation") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Scenario sc = quick(10.0);
        sc.seed = seed;
        sc.channel.profile = chan::InfProfile::DL;
        sc.mobility.mode = MobilityMode::Ring;
        sc.mobility.ring_distance_m = 212.5;
        const auto store = Simulation::build(sc).run();
        for (const auto &c : store.counters())
            CHECK(c.generated == c.delivered + c.dropped() + c.in_flight);
        std::uint64_t harq_drops = 0;
        for (const auto &c : store.counters())
            harq_drops += c.dropped_harq;
        CHECK(harq_drops > 0); // the far dense cell loses frames
    }
}

TEST_CASE("event times are monotone and slot ticks sit on the slot grid") {
    auto sim = Simulation::build(quick(5.0));
    SimTime last{};
    std::uint64_t ticks = 0;
    std::set<std::pair<int, std::int64_t>> seen;
    bool monotone = true, on_grid = true, unique = true;
    sim.set_observer([&](const EventInfo &e) {
        monotone = monotone && e.time >= last;
        last = e.time;
        if (e.kind == EventKind::SlotTick) {
            ++ticks;
            on_grid = on_grid && e.time.ps() % 62'500'000 == 0;
            unique = unique && seen.insert({e.mac, e.time.ps()}).second;
        }
    });
    (void)sim.run();
    CHECK(monotone);
    CHECK(on_grid);
    CHECK(unique);
    CHECK(ticks > 0);
}

TEST_CASE("progress callback") {
    auto sim = Simulation::build(quick(3.0));
    int calls = 0;
    sim.set_progress([&](SimTime, SimTime) { ++calls; });
    (void)sim.run();
    CHECK(calls >= 3);
}

TEST_CASE("run_batch") {
    const Scenario sc = quick(3.0);
    const std::vector<std::uint64_t> same{1, 1};
    const auto s = run_batch(sc, same);
    REQUIRE(s.size() == 2);
    CHECK(exported(s[0], "b0") == exported(s[1], "b1"));
    const std::vector<std::uint64_t> diff{1, 2};
    const auto d = run_batch(sc, diff);
    CHECK(exported(d[0], "b2") != exported(d[1], "b3"));
    const std::vector<std::uint64_t> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto t = run_batch(sc, ten);
    CHECK(t.size() == 10);
    // order follows the seed list
    Scenario sc3 = sc;
    sc3.seed = 3;
    CHECK(exported(t[2], "b4") == exported(Simulation::build(sc3).run(), "b5"));
    CHECK_THROWS_AS(run_batch(sc, std::vector<std::uint64_t>{}), DomainError);
}

TEST_CASE("run_batch tags errors with the seed") {
    Scenario sc = quick(3.0);
    sc.mobility.mode = MobilityMode::Ring;
    sc.mobility.ring_distance_m = 0.5; // inside the 1 m validity floor
    try {
        (void)run_batch(sc, std::vector<std::uint64_t>{7});
        FAIL("expected DomainError");
    } catch (const DomainError &e) {
        CHECK(std::string(e.what()).find("seed 7") != std::string::npos);
    }
    sc.channel.lenient_range = true;
    const auto s = run_batch(sc, std::vector<std::uint64_t>{7});
    CHECK(s[0].clamped_channel_samples == s[0].sinr().size());
}

TEST_CASE("uplink best effort waits for a grant") {
    Scenario sc = quick(10.0);
    sc.radio.fixed_bler = 0.0;
    sc.radio.num_rbs = 273;
    const auto store = Simulation::build(sc).run();
    const auto be = store.latencies_ms(2);
    REQUIRE_FALSE(be.empty());
    // SR occasion every 8 slots plus a 4-slot grant delay and one slot on air
    for (double ms : be) {
        CHECK(ms >= 5 * 0.0625 - 1e-9);
        CHECK(ms <= 1.0);
    }
    sc.radio.configured_grant_min_pcp = 0;
    const auto cg = Simulation::build(sc).run();
    for (double ms : cg.latencies_ms(2))
        CHECK(ms < 5 * 0.0625);
}

TEST_CASE("trace recording") {
    auto sim = Simulation::build(quick(2.0));
    sim.enable_trace(true);
    (void)sim.run();
    CHECK(sim.trace().size() == 21);
    CHECK(sim.trace().front().t_s == 0.0);
}
