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

#ifndef TSNSIM_TSN_HPP
#define TSNSIM_TSN_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include "tsnsim/rng.hpp"
#include "tsnsim/sim_time.hpp"

/// TSN side of the link: traffic classes and their generators, PCP / 5QI
/// mapping, strict-priority egress queues and wired-segment timing.
namespace tsnsim::tsn {

enum class TrafficClass { NC, Video, BE };
enum class FiveQiClass { DcGbr, Gbr, NonGbr };
enum class Direction { Uplink, Downlink };

std::string_view to_string(TrafficClass c);
std::string_view to_string(FiveQiClass c);
std::string_view to_string(Direction d);
TrafficClass parse_class(std::string_view text);
Direction parse_direction(std::string_view text);

/// Closed range; `lo == hi` is a fixed value.
struct Range {
    double lo = 0.0;
    double hi = 0.0;

    static Range fixed(double v) { return {v, v}; }
    bool is_fixed() const { return lo == hi; }
    double mean() const { return 0.5 * (lo + hi); }
};

struct FlowSpec {
    std::string name;
    TrafficClass traffic_class = TrafficClass::NC;
    int pcp = 7;
    FiveQiClass five_qi = FiveQiClass::DcGbr;
    Range packet_bytes = Range::fixed(300);
    Range interarrival_s = Range::fixed(0.05);
    // Periodic flows draw one period per run when `interarrival_s` is a range;
    // sporadic flows draw every gap.
    bool periodic = true;
    Direction direction = Direction::Downlink;
    std::optional<int> test_case; // set on built-in test-case flows
};

/// Throws ConfigError naming `flow.<name>.<key>`.
void validate(const FlowSpec &spec);

struct Priority {
    int pcp;
    FiveQiClass five_qi;
};

Priority map_class_to_priority(TrafficClass c);

/// Class template with the documented size and interarrival bounds.
FlowSpec class_defaults(TrafficClass c);

inline constexpr int kNumTestCases = 7;

/// The three flows (NC, Video, BE) of built-in test case `id` in 1..7.
std::array<FlowSpec, 3> test_case(int id);

/// Offered load in kbit/s. Throws DomainError unless size and interarrival are fixed.
double offered_rate_kbps(const FlowSpec &spec);

/// Next generation instant after `now`.
SimTime next_arrival(const FlowSpec &spec, SimTime now, RngStream &rng);

struct Frame {
    std::uint64_t id = 0; // engine-wide identifier
    std::uint32_t flow = 0;
    std::uint64_t seq = 0;
    std::uint32_t size_bytes = 1;
    SimTime created_at{};
    std::optional<SimTime> delivered_at;
    int pcp = 0;
};

inline constexpr int kNumPcp = 8;
inline constexpr std::size_t kDefaultQueueCapacity = 512;

/// Eight FIFO queues indexed by PCP, served in strict priority order.
class PriorityQueueSet {
public:
    explicit PriorityQueueSet(std::size_t capacity_per_pcp = kDefaultQueueCapacity);

    /// False, with the drop counted, when the frame's PCP queue is full.
    bool enqueue(const Frame &frame);
    /// Head of the highest non-empty PCP queue.
    std::optional<Frame> dequeue();

    bool empty() const;
    std::size_t size(int pcp) const;
    std::size_t size() const;
    std::uint64_t drops() const { return drops_; }
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    std::array<std::deque<Frame>, kNumPcp> queues_;
    std::uint64_t drops_ = 0;
};

struct WiredSegment {
    double link_rate_bps = 100e6;
    SimTime propagation{SimTime::from_us(1.0)};
};

SimTime serialization_time(const WiredSegment &seg, std::uint32_t size_bytes);

/// Serialization plus propagation.
SimTime wire_transit(const WiredSegment &seg, std::uint32_t size_bytes);

} // namespace tsnsim::tsn

#endif
