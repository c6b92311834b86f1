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

#include "test_util.hpp"
#include "tsnsim/errors.hpp"
#include "tsnsim/phy.hpp"
#include "tsnsim/rng.hpp"

using namespace tsnsim;
using namespace tsnsim::phy;

TEST_CASE("slot duration") {
    CHECK(slot_duration(0).ps() == 1'000'000'000);
    CHECK(slot_duration(2).ps() == 250'000'000);
    CHECK(slot_duration(4).ps() == 62'500'000);
    CHECK(slot_duration(4).ms() == doctest::Approx(0.0625));
    CHECK_THROWS_AS(slot_duration(7), ConfigError);
    CHECK_THROWS_AS(slot_duration(-1), ConfigError);
}

TEST_CASE("slot ticks accumulate without drift") {
    SimTime t{};
    const SimTime slot = slot_duration(4);
    for (int i = 0; i < 1000000; ++i)
        t += slot;
    CHECK(t.ps() == 62'500'000LL * 1000000);
    CHECK(t == SimTime::from_seconds(62.5));
}

TEST_CASE("noise power") {
    CHECK(noise_power_dbm(1, 0, 0.0) == doctest::Approx(-121.447274949).epsilon(1e-11));
    CHECK(noise_power_dbm(25, 4, 5.0) == doctest::Approx(-90.4266750357).epsilon(1e-11));
    CHECK(noise_power_dbm(50, 4, 5.0) - noise_power_dbm(25, 4, 5.0) == doctest::Approx(3.0102999566).epsilon(1e-10));
}

TEST_CASE("SINR") {
    InterferenceRegistry none;
    CHECK(sinr_db(-80.0, -100.0, none) == 20.0);
    CHECK(sinr_db(23.0 - 89.4861882212, -90.4266750357, none) == (23.0 - 89.4861882212) - (-90.4266750357));
    InterferenceRegistry one;
    one.add("gnb2", -100.0);
    CHECK(sinr_db(-80.0, -100.0, one) == doctest::Approx(16.9897000434).epsilon(1e-11));
}

TEST_CASE("logistic BLER") {
    const auto c = BlerCurve::default_curve();
    CHECK(c.num_mcs() == 28);
    for (int m = 0; m < 28; ++m) {
        const double mid = -5.0 + 1.2 * m;
        CHECK(c.bler(m, mid) == doctest::Approx(0.5));
        CHECK(c.bler(m, mid + 20 * 0.5) < 1e-8);
        for (double g = -20; g < 40; g += 0.37)
            REQUIRE(c.bler(m, g + 0.1) <= c.bler(m, g));
    }
    CHECK_THROWS_AS(c.bler(28, 0.0), DomainError);
    CHECK_THROWS_AS(c.bler(-1, 0.0), DomainError);
}

TEST_CASE("MCS selection") {
    const auto c = BlerCurve::default_curve();
    CHECK(select_mcs(c, -30.0, 0.01) == 0);
    CHECK(select_mcs(c, -5.0 + 1.2 * 27 + 10.0, 0.01) == 27);
    CHECK(select_mcs(c, 10.0, 0.01) == 10);
    int prev = 0;
    for (double g = -20; g < 40; g += 0.05) {
        const int m = select_mcs(c, g, 0.01);
        REQUIRE(m >= prev);
        prev = m;
    }
}

TEST_CASE("table BLER and CSV loading") {
    testutil::TempDir dir("phy");
    testutil::spit(dir.path() / "bler.csv", "mcs,sinr_db,bler\n0,0,0.9\n0,10,0.1\n1,5,0.5\n1,15,0.01\n");
    const auto c = BlerCurve::load_csv((dir.path() / "bler.csv").string());
    CHECK(c.num_mcs() == 2);
    CHECK(c.bler(0, 5.0) == doctest::Approx(0.5));
    CHECK(c.bler(0, -10.0) == doctest::Approx(0.9));
    CHECK(c.bler(0, 50.0) == doctest::Approx(0.1));
    CHECK(c.bler(1, 10.0) == doctest::Approx(0.255));
    CHECK_THROWS_AS(BlerCurve::table({{{0.0, 0.5}, {0.0, 0.4}}}), DomainError);

    testutil::spit(dir.path() / "bad.csv", "mcs,sinr_db,bler\n0,0,0.9\n0,abc,0.1\n");
    try {
        BlerCurve::load_csv((dir.path() / "bad.csv").string());
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(BlerCurve::load_csv((dir.path() / "missing.csv").string()), IoError);

    testutil::spit(dir.path() / "mcs.csv", "mcs,efficiency\n0,1.0\n1,2.0\n");
    const auto t = McsTable::load_csv((dir.path() / "mcs.csv").string());
    CHECK(t.size() == 2);
    CHECK(transport_block_bits(t, 1, 1) == 336);
}

TEST_CASE("transport block size") {
    const McsTable unit({1.0, 0.2344});
    CHECK(transport_block_bits(unit, 0, 1) == 168);
    CHECK(transport_block_bits(unit, 1, 25) == 984);
    const auto d = McsTable::default_table();
    CHECK(d.size() == 28);
    CHECK(d.efficiency(0) == doctest::Approx(0.15));
    CHECK(d.efficiency(27) == doctest::Approx(5.28));
    for (int m = 0; m < 28; ++m) {
        const auto b1 = transport_block_bits(d, m, 10);
        const auto b2 = transport_block_bits(d, m, 20);
        REQUIRE(std::abs(b2 - 2 * b1) <= 1);
    }
    const McsTable tiny({1e-9});
    CHECK(transport_block_bits(tiny, 0, 1) == 1);
}

TEST_CASE("HARQ steps") {
    HarqTally tally;
    auto p = harq_step({}, 0.3, 0.0, 4, tally);
    CHECK(p.outcome == HarqOutcome::Delivered);
    CHECK(p.attempts_used == 1);
    CHECK_THROWS_AS(harq_step(p, 0.3, 0.0, 4, tally), InvariantViolation);

    HarqProcess q;
    for (int i = 0; i < 4; ++i) {
        REQUIRE(q.outcome == HarqOutcome::Pending);
        q = harq_step(q, 0.99, 1.0, 4, tally);
    }
    CHECK(q.outcome == HarqOutcome::Failed);
    CHECK(q.attempts_used == 4);
    CHECK(tally.total_tx == 5);
    CHECK(tally.failed_tx == 4);
    // boundary: success iff draw >= bler
    HarqTally t2;
    CHECK(harq_step({}, 0.1, 0.1, 4, t2).outcome == HarqOutcome::Delivered);
    CHECK(harq_step({}, 0.0999, 0.1, 4, t2).outcome == HarqOutcome::Pending);
}

TEST_CASE("HARQ residual failure matches the closed form") {
    RngStream rng(2024, "phy");
    const double b = 0.1;
    const int n = 1000000;
    HarqTally tally;
    std::uint64_t failed = 0;
    for (int i = 0; i < n; ++i) {
        HarqProcess p;
        while (p.outcome == HarqOutcome::Pending)
            p = harq_step(p, rng.uniform(), b, 4, tally);
        failed += p.outcome == HarqOutcome::Failed;
    }
    const double q = std::pow(b, 4);
    CHECK(std::abs(double(failed) - n * q) <= 3 * std::sqrt(n * q * (1 - q)));
    const double rate = double(tally.failed_tx) / double(tally.total_tx);
    CHECK(std::abs(rate - b) <= 3 * std::sqrt(b * (1 - b) / double(tally.total_tx)));
}

TEST_CASE("radio config validation") {
    RadioConfig c;
    CHECK_NOTHROW(validate(c));
    c.numerology = 7;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(e.key() == "radio.numerology");
    }
    c = {};
    c.target_bler = 1.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.num_rbs = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.max_harq_tx = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}
