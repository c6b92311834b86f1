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

#include "tsnsim/tsn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "tsnsim/errors.hpp"

namespace tsnsim::tsn {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

struct TestCaseRow {
    int nc_bytes, nc_ms;
    int video_bytes, video_ms;
    int be_bytes, be_ms;
};

// Packet length (B) and interarrival (ms) per class.
constexpr std::array<TestCaseRow, kNumTestCases> kTestCases{{
    {300, 50, 1000, 70, 1000, 700},
    {427, 50, 1213, 70, 1109, 700},
    {427, 60, 1213, 70, 1209, 500},
    {485, 60, 1303, 70, 1330, 500},
    {485, 70, 1303, 70, 1330, 550},
    {498, 50, 1413, 70, 1409, 550},
    {498, 55, 1453, 60, 1429, 600},
}};

} // namespace

std::string_view to_string(TrafficClass c) {
    switch (c) {
    case TrafficClass::NC: return "NC";
    case TrafficClass::Video: return "Video";
    case TrafficClass::BE: return "BE";
    }
    return "?";
}

std::string_view to_string(FiveQiClass c) {
    switch (c) {
    case FiveQiClass::DcGbr: return "DC-GBR";
    case FiveQiClass::Gbr: return "GBR";
    case FiveQiClass::NonGbr: return "Non-GBR";
    }
    return "?";
}

std::string_view to_string(Direction d) { return d == Direction::Uplink ? "uplink" : "downlink"; }

TrafficClass parse_class(std::string_view text) {
    const std::string s = lower(text);
    if (s == "nc")
        return TrafficClass::NC;
    if (s == "video")
        return TrafficClass::Video;
    if (s == "be")
        return TrafficClass::BE;
    throw DomainError(fmt::format("unknown traffic class '{}' (valid: NC, Video, BE)", text));
}

Direction parse_direction(std::string_view text) {
    const std::string s = lower(text);
    if (s == "uplink" || s == "ul")
        return Direction::Uplink;
    if (s == "downlink" || s == "dl")
        return Direction::Downlink;
    throw DomainError(fmt::format("unknown direction '{}' (valid: uplink, downlink)", text));
}

void validate(const FlowSpec &spec) {
    const std::string prefix = "flow." + spec.name + ".";
    if (spec.pcp < 0 || spec.pcp >= kNumPcp)
        throw ConfigError(prefix + "pcp", "must be in 0..7");
    if (!(spec.packet_bytes.lo >= 1.0) || spec.packet_bytes.hi < spec.packet_bytes.lo)
        throw ConfigError(prefix + "packet_bytes", "must be >= 1 with min <= max");
    if (!(spec.interarrival_s.lo > 0.0) || spec.interarrival_s.hi < spec.interarrival_s.lo)
        throw ConfigError(prefix + "interarrival_ms", "must be > 0 with min <= max");
}

Priority map_class_to_priority(TrafficClass c) {
    switch (c) {
    case TrafficClass::NC: return {7, FiveQiClass::DcGbr};
    case TrafficClass::Video: return {5, FiveQiClass::Gbr};
    case TrafficClass::BE: return {0, FiveQiClass::NonGbr};
    }
    return {0, FiveQiClass::NonGbr};
}

FlowSpec class_defaults(TrafficClass c) {
    FlowSpec f;
    f.traffic_class = c;
    const Priority pr = map_class_to_priority(c);
    f.pcp = pr.pcp;
    f.five_qi = pr.five_qi;
    switch (c) {
    case TrafficClass::NC:
        f.name = "nc";
        f.packet_bytes = {50, 500};
        f.interarrival_s = {0.05, 1.0};
        f.periodic = true;
        f.direction = Direction::Downlink;
        break;
    case TrafficClass::Video:
        // Camera streams are periodic; the frame rate is a per-run choice.
        f.name = "video";
        f.packet_bytes = {1000, 1500};
        f.interarrival_s = {0.05, 0.1};
        f.periodic = true;
        f.direction = Direction::Uplink;
        break;
    case TrafficClass::BE:
        f.name = "be";
        f.packet_bytes = {30, 1500};
        f.interarrival_s = {0.5, 2.0};
        f.periodic = false;
        f.direction = Direction::Uplink;
        break;
    }
    return f;
}

std::array<FlowSpec, 3> test_case(int id) {
    if (id < 1 || id > kNumTestCases)
        throw DomainError(fmt::format("unknown test case {} (valid: 1..{})", id, kNumTestCases));
    const TestCaseRow &row = kTestCases[id - 1];
    auto make = [id](TrafficClass c, int bytes, int ms) {
        FlowSpec f = class_defaults(c);
        f.packet_bytes = Range::fixed(bytes);
        f.interarrival_s = Range::fixed(ms * 1e-3);
        f.test_case = id;
        return f;
    };
    return {make(TrafficClass::NC, row.nc_bytes, row.nc_ms), make(TrafficClass::Video, row.video_bytes, row.video_ms),
            make(TrafficClass::BE, row.be_bytes, row.be_ms)};
}

double offered_rate_kbps(const FlowSpec &spec) {
    if (!spec.packet_bytes.is_fixed() || !spec.interarrival_s.is_fixed())
        throw DomainError(fmt::format("flow '{}': offered rate needs fixed size and interarrival", spec.name));
    return spec.packet_bytes.lo * 8.0 / spec.interarrival_s.lo / 1e3;
}

SimTime next_arrival(const FlowSpec &spec, SimTime now, RngStream &rng) {
    if (spec.interarrival_s.is_fixed())
        return now + SimTime::from_seconds(spec.interarrival_s.lo);
    return now + SimTime::from_seconds(rng.uniform(spec.interarrival_s.lo, spec.interarrival_s.hi));
}

PriorityQueueSet::PriorityQueueSet(std::size_t capacity_per_pcp) : capacity_(capacity_per_pcp) {}

bool PriorityQueueSet::enqueue(const Frame &frame) {
    if (frame.pcp < 0 || frame.pcp >= kNumPcp)
        throw DomainError(fmt::format("PCP {} outside 0..7", frame.pcp));
    auto &q = queues_[frame.pcp];
    if (q.size() >= capacity_) {
        ++drops_;
        return false;
    }
    q.push_back(frame);
    return true;
}

std::optional<Frame> PriorityQueueSet::dequeue() {
    for (int pcp = kNumPcp - 1; pcp >= 0; --pcp) {
        auto &q = queues_[pcp];
        if (!q.empty()) {
            Frame f = q.front();
            q.pop_front();
            return f;
        }
    }
    return std::nullopt;
}

bool PriorityQueueSet::empty() const {
    return std::all_of(queues_.begin(), queues_.end(), [](const auto &q) { return q.empty(); });
}

std::size_t PriorityQueueSet::size(int pcp) const { return queues_.at(pcp).size(); }

std::size_t PriorityQueueSet::size() const {
    std::size_t n = 0;
    for (const auto &q : queues_)
        n += q.size();
    return n;
}

SimTime serialization_time(const WiredSegment &seg, std::uint32_t size_bytes) {
    if (!(seg.link_rate_bps > 0.0))
        throw DomainError("link rate must be positive");
    return SimTime::from_seconds(size_bytes * 8.0 / seg.link_rate_bps);
}

SimTime wire_transit(const WiredSegment &seg, std::uint32_t size_bytes) {
    return serialization_time(seg, size_bytes) + seg.propagation;
}

} // namespace tsnsim::tsn
