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

#include "tsnsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>

#include "tsnsim/errors.hpp"

namespace tsnsim {

using nlohmann::ordered_json;

namespace {

std::string trimmed(const std::string &text) { return boost::algorithm::trim_copy(text); }

double to_double(const std::string &key, const std::string &text) {
    const std::string s = trimmed(text);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
        throw ConfigError(key, fmt::format("'{}' is not a number", text));
    return v;
}

std::int64_t to_int(const std::string &key, const std::string &text) {
    const std::string s = trimmed(text);
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw ConfigError(key, fmt::format("'{}' is not an integer", text));
    return v;
}

bool to_bool(const std::string &key, const std::string &text) {
    const std::string s = boost::algorithm::to_lower_copy(trimmed(text));
    if (s == "true" || s == "yes" || s == "on" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "off" || s == "0")
        return false;
    throw ConfigError(key, fmt::format("'{}' is not a boolean", text));
}

bool is_none(const std::string &text) {
    const std::string s = boost::algorithm::to_lower_copy(trimmed(text));
    return s == "none" || s == "auto" || s.empty();
}

std::optional<double> to_opt_double(const std::string &key, const std::string &text) {
    if (is_none(text))
        return std::nullopt;
    return to_double(key, text);
}

// "a" or "a..b"
tsn::Range to_range(const std::string &key, const std::string &text, double scale) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        return tsn::Range::fixed(to_double(key, text) * scale);
    const double lo = to_double(key, text.substr(0, dots));
    const double hi = to_double(key, text.substr(dots + 2));
    if (hi < lo)
        throw ConfigError(key, fmt::format("range '{}' has min > max", text));
    return {lo * scale, hi * scale};
}

ordered_json range_json(const tsn::Range &r, double factor) {
    if (r.is_fixed())
        return r.lo * factor;
    return fmt::format("{}..{}", r.lo * factor, r.hi * factor);
}

ordered_json opt_json(const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json("auto"); }

template <typename T> T rethrow_domain(const std::string &key, auto &&fn) {
    try {
        return fn();
    } catch (const DomainError &e) {
        throw ConfigError(key, e.what());
    }
}

int to_test_case(const std::string &key, const std::string &text) {
    std::string s = boost::algorithm::to_lower_copy(trimmed(text));
    if (boost::algorithm::starts_with(s, "tc"))
        s = s.substr(2);
    const auto id = to_int(key, s);
    if (id < 1 || id > tsn::kNumTestCases)
        throw ConfigError(key, fmt::format("unknown test case '{}' (valid: tc1..tc{})", text, tsn::kNumTestCases));
    return static_cast<int>(id);
}

std::vector<double> to_list(const std::string &key, const std::string &text) {
    std::vector<double> out;
    if (is_none(text))
        return out;
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
    for (const auto &p : parts)
        out.push_back(to_double(key, p));
    return out;
}

std::vector<Setting> make_settings() {
    std::vector<Setting> s;
    auto add = [&s](std::string section, std::string key, auto get, auto set) {
        s.push_back({std::move(section), std::move(key), get, set});
    };
    auto add_dbl = [&](std::string section, std::string key, auto member) {
        const std::string name = section + "." + key;
        add(section, key, [member](const Scenario &sc) { return ordered_json(std::invoke(member, sc)); },
            [member, name](Scenario &sc, const std::string &v) { std::invoke(member, sc) = to_double(name, v); });
    };
    auto add_int = [&](std::string section, std::string key, auto member) {
        const std::string name = section + "." + key;
        add(section, key, [member](const Scenario &sc) { return ordered_json(std::invoke(member, sc)); },
            [member, name](Scenario &sc, const std::string &v) {
                std::invoke(member, sc) = static_cast<std::remove_reference_t<decltype(std::invoke(member, sc))>>(
                    to_int(name, v));
            });
    };
    auto add_bool = [&](std::string section, std::string key, auto member) {
        const std::string name = section + "." + key;
        add(section, key, [member](const Scenario &sc) { return ordered_json(std::invoke(member, sc)); },
            [member, name](Scenario &sc, const std::string &v) { std::invoke(member, sc) = to_bool(name, v); });
    };
    auto add_opt = [&](std::string section, std::string key, auto member) {
        const std::string name = section + "." + key;
        add(section, key, [member](const Scenario &sc) { return opt_json(std::invoke(member, sc)); },
            [member, name](Scenario &sc, const std::string &v) { std::invoke(member, sc) = to_opt_double(name, v); });
    };

    // [channel]
    add("channel", "profile", [](const Scenario &sc) { return ordered_json(chan::to_string(sc.channel.profile)); },
        [](Scenario &sc, const std::string &v) {
            sc.channel.profile = rethrow_domain<chan::InfProfile>("channel.profile",
                                                                  [&] { return chan::parse_profile(trimmed(v)); });
        });
    add_opt("channel", "d_clutter_m", [](auto &sc) -> auto & { return sc.channel.d_clutter_m; });
    add_opt("channel", "clutter_density", [](auto &sc) -> auto & { return sc.channel.clutter_density; });
    add_opt("channel", "clutter_height_m", [](auto &sc) -> auto & { return sc.channel.clutter_height_m; });
    add_opt("channel", "bs_height_m", [](auto &sc) -> auto & { return sc.channel.bs_height_m; });
    add_opt("channel", "ut_height_m", [](auto &sc) -> auto & { return sc.channel.ut_height_m; });
    add_bool("channel", "lenient_range", [](auto &sc) -> auto & { return sc.channel.lenient_range; });
    add("channel", "update_period_ms", [](const Scenario &sc) { return ordered_json(sc.channel.update_period_s * 1e3); },
        [](Scenario &sc, const std::string &v) {
            sc.channel.update_period_s = to_double("channel.update_period_ms", v) * 1e-3;
        });

    // [radio]
    add_dbl("radio", "gnb_tx_power_dbm", [](auto &sc) -> auto & { return sc.radio.gnb_tx_power_dbm; });
    add_dbl("radio", "ue_tx_power_dbm", [](auto &sc) -> auto & { return sc.radio.ue_tx_power_dbm; });
    add_dbl("radio", "carrier_ghz", [](auto &sc) -> auto & { return sc.radio.carrier_ghz; });
    add_int("radio", "numerology", [](auto &sc) -> auto & { return sc.radio.numerology; });
    add_int("radio", "num_rbs", [](auto &sc) -> auto & { return sc.radio.num_rbs; });
    add_dbl("radio", "noise_figure_db", [](auto &sc) -> auto & { return sc.radio.noise_figure_db; });
    add_dbl("radio", "target_bler", [](auto &sc) -> auto & { return sc.radio.target_bler; });
    add_int("radio", "max_harq_tx", [](auto &sc) -> auto & { return sc.radio.max_harq_tx; });
    add_int("radio", "harq_rtt_slots", [](auto &sc) -> auto & { return sc.radio.harq_rtt_slots; });
    add_int("radio", "configured_grant_min_pcp", [](auto &sc) -> auto & { return sc.radio.configured_grant_min_pcp; });
    add_int("radio", "sr_period_slots", [](auto &sc) -> auto & { return sc.radio.sr_period_slots; });
    add_int("radio", "ul_grant_delay_slots", [](auto &sc) -> auto & { return sc.radio.ul_grant_delay_slots; });
    add_opt("radio", "fixed_bler", [](auto &sc) -> auto & { return sc.radio.fixed_bler; });
    add("radio", "bler_table", [](const Scenario &sc) { return ordered_json(sc.bler_table); },
        [](Scenario &sc, const std::string &v) { sc.bler_table = trimmed(v); });
    add("radio", "mcs_table", [](const Scenario &sc) { return ordered_json(sc.mcs_table); },
        [](Scenario &sc, const std::string &v) { sc.mcs_table = trimmed(v); });

    // [mobility]
    add("mobility", "mode", [](const Scenario &sc) { return ordered_json(to_string(sc.mobility.mode)); },
        [](Scenario &sc, const std::string &v) {
            const std::string m = boost::algorithm::to_lower_copy(trimmed(v));
            if (m == "random_waypoint")
                sc.mobility.mode = MobilityMode::RandomWaypoint;
            else if (m == "ring")
                sc.mobility.mode = MobilityMode::Ring;
            else
                throw ConfigError("mobility.mode", fmt::format("unknown mode '{}' (valid: random_waypoint, ring)", v));
        });
    add_dbl("mobility", "speed_min_mps", [](auto &sc) -> auto & { return sc.mobility.speed_min_mps; });
    add_dbl("mobility", "speed_max_mps", [](auto &sc) -> auto & { return sc.mobility.speed_max_mps; });
    add_dbl("mobility", "pause_s", [](auto &sc) -> auto & { return sc.mobility.pause_s; });
    add_dbl("mobility", "hall_x_min_m", [](auto &sc) -> auto & { return sc.mobility.hall.x_min; });
    add_dbl("mobility", "hall_x_max_m", [](auto &sc) -> auto & { return sc.mobility.hall.x_max; });
    add_dbl("mobility", "hall_y_min_m", [](auto &sc) -> auto & { return sc.mobility.hall.y_min; });
    add_dbl("mobility", "hall_y_max_m", [](auto &sc) -> auto & { return sc.mobility.hall.y_max; });
    add_opt("mobility", "max_distance_m", [](auto &sc) -> auto & { return sc.mobility.max_distance_m; });
    add("mobility", "update_period_ms",
        [](const Scenario &sc) { return ordered_json(sc.mobility.update_period_s * 1e3); },
        [](Scenario &sc, const std::string &v) {
            sc.mobility.update_period_s = to_double("mobility.update_period_ms", v) * 1e-3;
        });
    add_dbl("mobility", "gnb_x_m", [](auto &sc) -> auto & { return sc.mobility.gnb_x_m; });
    add_dbl("mobility", "gnb_y_m", [](auto &sc) -> auto & { return sc.mobility.gnb_y_m; });
    add_dbl("mobility", "ring_distance_m", [](auto &sc) -> auto & { return sc.mobility.ring_distance_m; });
    add_dbl("mobility", "ring_angle_deg", [](auto &sc) -> auto & { return sc.mobility.ring_angle_deg; });
    add("mobility", "sweep_extra_distances_m",
        [](const Scenario &sc) { return ordered_json(sc.mobility.sweep_extra_distances_m); },
        [](Scenario &sc, const std::string &v) {
            sc.mobility.sweep_extra_distances_m = to_list("mobility.sweep_extra_distances_m", v);
        });

    // [sim]
    add_dbl("sim", "duration_s", [](auto &sc) -> auto & { return sc.duration_s; });
    add("sim", "seed", [](const Scenario &sc) { return ordered_json(sc.seed); },
        [](Scenario &sc, const std::string &v) {
            const auto n = to_int("sim.seed", v);
            if (n < 0)
                throw ConfigError("sim.seed", "must be non-negative");
            sc.seed = static_cast<std::uint64_t>(n);
        });
    add_dbl("sim", "warmup_s", [](auto &sc) -> auto & { return sc.warmup_s; });
    add("sim", "test_case",
        [](const Scenario &sc) {
            return sc.test_case ? ordered_json(fmt::format("tc{}", *sc.test_case)) : ordered_json("none");
        },
        [](Scenario &sc, const std::string &v) {
            if (is_none(v))
                sc.test_case.reset();
            else
                sc.test_case = to_test_case("sim.test_case", v);
        });
    add("sim", "queue_capacity", [](const Scenario &sc) { return ordered_json(sc.queue_capacity); },
        [](Scenario &sc, const std::string &v) {
            const auto n = to_int("sim.queue_capacity", v);
            if (n < 1)
                throw ConfigError("sim.queue_capacity", "must be >= 1");
            sc.queue_capacity = static_cast<std::size_t>(n);
        });
    add_bool("sim", "phase_jitter", [](auto &sc) -> auto & { return sc.phase_jitter; });
    add("sim", "wire_rate_mbps", [](const Scenario &sc) { return ordered_json(sc.wired.link_rate_bps / 1e6); },
        [](Scenario &sc, const std::string &v) { sc.wired.link_rate_bps = to_double("sim.wire_rate_mbps", v) * 1e6; });
    add("sim", "wire_propagation_us", [](const Scenario &sc) { return ordered_json(sc.wired.propagation.ps() / 1e6); },
        [](Scenario &sc, const std::string &v) {
            sc.wired.propagation = SimTime::from_us(to_double("sim.wire_propagation_us", v));
        });
    add("sim", "core_delay_us", [](const Scenario &sc) { return ordered_json(sc.core_delay_s * 1e6); },
        [](Scenario &sc, const std::string &v) { sc.core_delay_s = to_double("sim.core_delay_us", v) * 1e-6; });
    return s;
}

std::vector<FlowSetting> make_flow_settings() {
    std::vector<FlowSetting> s;
    s.push_back({"class", [](const tsn::FlowSpec &f) { return ordered_json(tsn::to_string(f.traffic_class)); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     const auto c = rethrow_domain<tsn::TrafficClass>("flow." + f.name + ".class",
                                                                      [&] { return tsn::parse_class(trimmed(v)); });
                     // Switching class resets the flow to that class's template.
                     tsn::FlowSpec d = tsn::class_defaults(c);
                     d.name = f.name;
                     f = d;
                 }});
    s.push_back({"pcp", [](const tsn::FlowSpec &f) { return ordered_json(f.pcp); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     f.pcp = static_cast<int>(to_int("flow." + f.name + ".pcp", v));
                 }});
    s.push_back({"packet_bytes", [](const tsn::FlowSpec &f) { return range_json(f.packet_bytes, 1.0); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     f.packet_bytes = to_range("flow." + f.name + ".packet_bytes", v, 1.0);
                     f.packet_bytes.lo = std::round(f.packet_bytes.lo);
                     f.packet_bytes.hi = std::round(f.packet_bytes.hi);
                 }});
    s.push_back({"interarrival_ms", [](const tsn::FlowSpec &f) { return range_json(f.interarrival_s, 1e3); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     f.interarrival_s = to_range("flow." + f.name + ".interarrival_ms", v, 1e-3);
                 }});
    s.push_back({"periodic", [](const tsn::FlowSpec &f) { return ordered_json(f.periodic); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     f.periodic = to_bool("flow." + f.name + ".periodic", v);
                 }});
    s.push_back({"direction", [](const tsn::FlowSpec &f) { return ordered_json(tsn::to_string(f.direction)); },
                 [](tsn::FlowSpec &f, const std::string &v) {
                     f.direction = rethrow_domain<tsn::Direction>("flow." + f.name + ".direction",
                                                                  [&] { return tsn::parse_direction(trimmed(v)); });
                 }});
    return s;
}

} // namespace

std::string_view to_string(MobilityMode m) { return m == MobilityMode::Ring ? "ring" : "random_waypoint"; }

chan::ClutterParams ChannelSettings::clutter() const {
    chan::ClutterParams c = chan::default_clutter(profile);
    if (d_clutter_m)
        c.d_clutter_m = *d_clutter_m;
    if (clutter_density)
        c.density = *clutter_density;
    if (clutter_height_m)
        c.height_m = *clutter_height_m;
    return c;
}

chan::NodeGeometry ChannelSettings::geometry() const {
    chan::NodeGeometry g = chan::default_geometry(profile);
    if (bs_height_m)
        g.bs_height_m = *bs_height_m;
    if (ut_height_m)
        g.ut_height_m = *ut_height_m;
    return g;
}

std::vector<tsn::FlowSpec> Scenario::effective_flows() const {
    std::vector<tsn::FlowSpec> out;
    if (test_case) {
        const auto tc = tsn::test_case(*test_case);
        out.assign(tc.begin(), tc.end());
    }
    out.insert(out.end(), flows.begin(), flows.end());
    return out;
}

Scenario default_scenario() {
    Scenario sc;
    sc.test_case = 1;
    return sc;
}

void validate(const Scenario &sc) {
    phy::validate(sc.radio);
    if (!(sc.duration_s > 0.0))
        throw ConfigError("sim.duration_s", "must be > 0");
    if (!(sc.warmup_s >= 0.0))
        throw ConfigError("sim.warmup_s", "must be >= 0");
    if (!(sc.wired.link_rate_bps > 0.0))
        throw ConfigError("sim.wire_rate_mbps", "must be > 0");
    if (sc.wired.propagation < SimTime{})
        throw ConfigError("sim.wire_propagation_us", "must be >= 0");
    if (!(sc.core_delay_s >= 0.0))
        throw ConfigError("sim.core_delay_us", "must be >= 0");
    if (!(sc.channel.update_period_s > 0.0))
        throw ConfigError("channel.update_period_ms", "must be > 0");
    if (!(sc.mobility.update_period_s > 0.0))
        throw ConfigError("mobility.update_period_ms", "must be > 0");

    // Surfaces invalid clutter and height combinations before the run starts.
    try {
        if (sc.channel.profile != chan::InfProfile::HH)
            (void)chan::k_subsec(sc.channel.profile, sc.channel.clutter(), sc.channel.geometry());
    } catch (const DomainError &e) {
        throw ConfigError("channel", e.what());
    }
    if (sc.channel.profile == chan::InfProfile::HH)
        throw ConfigError("channel.profile", "InF-HH has no NLOS model and cannot drive a simulation");
    const auto geom = sc.channel.geometry();
    if (!(geom.ut_height_m > 0.0))
        throw ConfigError("channel.ut_height_m", "must be > 0");
    if (!(geom.bs_height_m > 0.0))
        throw ConfigError("channel.bs_height_m", "must be > 0");

    if (sc.mobility.mode == MobilityMode::Ring) {
        if (!(sc.mobility.ring_distance_m >= 0.0))
            throw ConfigError("mobility.ring_distance_m", "must be >= 0");
    } else {
        mobility::WaypointConfig wp;
        wp.bounds = sc.mobility.hall;
        wp.gnb = {sc.mobility.gnb_x_m, sc.mobility.gnb_y_m, geom.bs_height_m};
        wp.max_distance_m = sc.mobility.max_distance_m;
        wp.speed_min_mps = sc.mobility.speed_min_mps;
        wp.speed_max_mps = sc.mobility.speed_max_mps;
        wp.pause_s = sc.mobility.pause_s;
        wp.ut_height_m = geom.ut_height_m;
        mobility::validate(wp);
    }
    for (double d : sc.mobility.sweep_extra_distances_m) {
        if (!(d >= 0.0))
            throw ConfigError("mobility.sweep_extra_distances_m", "distances must be >= 0");
    }

    std::set<std::string> names;
    for (const auto &f : sc.effective_flows()) {
        if (f.name.empty())
            throw ConfigError("flow", "flow name must not be empty");
        if (!names.insert(f.name).second)
            throw ConfigError("flow." + f.name, "duplicate flow name");
        tsn::validate(f);
    }
}

const std::vector<Setting> &settings() {
    static const std::vector<Setting> s = make_settings();
    return s;
}

const std::vector<FlowSetting> &flow_settings() {
    static const std::vector<FlowSetting> s = make_flow_settings();
    return s;
}

const Setting *find_setting(std::string_view section, std::string_view key) {
    for (const auto &s : settings()) {
        if (s.section == section && s.key == key)
            return &s;
    }
    return nullptr;
}

const FlowSetting *find_flow_setting(std::string_view key) {
    for (const auto &s : flow_settings()) {
        if (s.key == key)
            return &s;
    }
    return nullptr;
}

ordered_json describe(const Scenario &sc) {
    ordered_json j = ordered_json::object();
    for (const auto &s : settings())
        j[s.name()] = s.get(sc);
    const auto clutter = sc.channel.clutter();
    const auto geom = sc.channel.geometry();
    j["resolved.d_clutter_m"] = clutter.d_clutter_m;
    j["resolved.clutter_density"] = clutter.density;
    j["resolved.clutter_height_m"] = clutter.height_m;
    j["resolved.bs_height_m"] = geom.bs_height_m;
    j["resolved.ut_height_m"] = geom.ut_height_m;
    ordered_json flows = ordered_json::array();
    for (const auto &f : sc.effective_flows()) {
        ordered_json jf;
        jf["name"] = f.name;
        for (const auto &fs : flow_settings())
            jf[fs.key] = fs.get(f);
        jf["five_qi"] = tsn::to_string(f.five_qi);
        jf["test_case"] = f.test_case ? ordered_json(*f.test_case) : ordered_json(nullptr);
        flows.push_back(std::move(jf));
    }
    j["flows"] = std::move(flows);
    return j;
}

} // namespace tsnsim
