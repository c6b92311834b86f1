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

#ifndef TSNSIM_ENGINE_HPP
#define TSNSIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsnsim/metrics.hpp"
#include "tsnsim/mobility.hpp"
#include "tsnsim/scenario.hpp"
#include "tsnsim/sim_time.hpp"

/// Discrete-event core: CC station, wired TSN segment, gNB, radio link, UE.
namespace tsnsim {

/// Declared in tie-break order for simultaneous events.
enum class EventKind : std::uint8_t {
    ChannelUpdate,
    MobilityUpdate,
    FrameArrival,
    SlotTick,
    HarqFeedback,
    WireDelivery,
    MetricsFlush,
};

std::string_view to_string(EventKind k);

/// What an observer sees of each popped event.
struct EventInfo {
    SimTime time{};
    EventKind kind = EventKind::MetricsFlush;
    std::uint64_t sequence = 0;
    // MAC index for slot ticks (0 downlink at the gNB, 1 uplink at the UE).
    int mac = -1;
};

struct Topology {
    std::vector<std::string> nodes;
    std::vector<std::string> hops;
};

class Simulation {
public:
    /// Validates and wires a scenario. Throws ConfigError naming the key.
    static Simulation build(const Scenario &scenario);

    Simulation(Simulation &&) noexcept;
    Simulation &operator=(Simulation &&) noexcept;
    ~Simulation();

    /// Runs to the scenario duration.
    metrics::MetricsStore run();
    /// Pops every event up to and including `until`, then finalizes. One run per instance.
    metrics::MetricsStore run(SimTime until);

    Topology topology() const;
    const Scenario &scenario() const;

    void set_observer(std::function<void(const EventInfo &)> fn);
    /// Called about once per simulated second.
    void set_progress(std::function<void(SimTime now, SimTime until)> fn);
    /// Records a mobility sample at every mobility update.
    void enable_trace(bool on);
    const std::vector<mobility::TraceSample> &trace() const;

private:
    struct Impl;
    explicit Simulation(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

/// Independent runs, one per seed, in seed order. Instances run concurrently.
/// Errors are rethrown with the seed in the message.
std::vector<metrics::MetricsStore> run_batch(const Scenario &scenario, std::span<const std::uint64_t> seeds,
                                             unsigned max_threads = 0);

} // namespace tsnsim

#endif
