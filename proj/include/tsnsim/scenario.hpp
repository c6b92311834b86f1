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

#ifndef TSNSIM_SCENARIO_HPP
#define TSNSIM_SCENARIO_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tsnsim/chan38901.hpp"
#include "tsnsim/mobility.hpp"
#include "tsnsim/phy.hpp"
#include "tsnsim/sim_time.hpp"
#include "tsnsim/tsn.hpp"

namespace tsnsim {

enum class MobilityMode { RandomWaypoint, Ring };

struct ChannelSettings {
    chan::InfProfile profile = chan::InfProfile::SL;
    // Unset values follow the profile's sparse/dense and low/high-BS defaults.
    std::optional<double> d_clutter_m;
    std::optional<double> clutter_density;
    std::optional<double> clutter_height_m;
    std::optional<double> bs_height_m;
    std::optional<double> ut_height_m;
    bool lenient_range = false;
    double update_period_s = 0.1;

    chan::ClutterParams clutter() const;
    chan::NodeGeometry geometry() const;
};

struct MobilitySettings {
    MobilityMode mode = MobilityMode::RandomWaypoint;
    mobility::HallBounds hall{};
    std::optional<double> max_distance_m = 250.0;
    double speed_min_mps = 0.2;
    double speed_max_mps = 1.5;
    double pause_s = 0.0;
    double update_period_s = 0.1;
    double gnb_x_m = 0.0;
    double gnb_y_m = 0.0;
    double ring_distance_m = 42.5;
    double ring_angle_deg = 0.0;
    // Ring radii added to the bin centres by the distance sweep.
    std::vector<double> sweep_extra_distances_m;
};

struct Scenario {
    ChannelSettings channel{};
    MobilitySettings mobility{};
    phy::RadioConfig radio{};
    // Built-in test-case flows, placed ahead of `flows`.
    std::optional<int> test_case;
    std::vector<tsn::FlowSpec> flows;
    tsn::WiredSegment wired{};
    double core_delay_s = 0.0;
    double duration_s = 60.0;
    std::uint64_t seed = 1;
    double warmup_s = 1.0;
    std::size_t queue_capacity = tsn::kDefaultQueueCapacity;
    bool phase_jitter = true;
    std::string bler_table;
    std::string mcs_table;

    /// Test-case flows followed by the explicitly configured ones.
    std::vector<tsn::FlowSpec> effective_flows() const;
};

/// Library default: reference radio settings, InF-SL, Random Waypoint, test case 1 traffic.
Scenario default_scenario();

/// Throws ConfigError naming the offending key.
void validate(const Scenario &sc);

/// One `[section] key` of the configuration vocabulary.
struct Setting {
    std::string section;
    std::string key;
    std::function<nlohmann::ordered_json(const Scenario &)> get;
    std::function<void(Scenario &, const std::string &)> set;

    std::string name() const { return section + "." + key; }
};

/// Per-flow keys inside a `[flow.<name>]` section.
struct FlowSetting {
    std::string key;
    std::function<nlohmann::ordered_json(const tsn::FlowSpec &)> get;
    std::function<void(tsn::FlowSpec &, const std::string &)> set;
};

const std::vector<Setting> &settings();
const std::vector<FlowSetting> &flow_settings();
const Setting *find_setting(std::string_view section, std::string_view key);
const FlowSetting *find_flow_setting(std::string_view key);

/// Every resolved setting plus the flow list, keyed by dotted name.
nlohmann::ordered_json describe(const Scenario &sc);

std::string_view to_string(MobilityMode m);

} // namespace tsnsim

#endif
