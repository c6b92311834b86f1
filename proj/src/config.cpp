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

#include "tsnsim/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "tsnsim/errors.hpp"

namespace tsnsim {

namespace pt = boost::property_tree;

namespace {

const std::string kFlowPrefix = "flow.";

std::string value_text(const nlohmann::ordered_json &v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto &e : v)
            out += (out.empty() ? "" : ",") + value_text(e);
        return out.empty() ? "none" : out;
    }
    return v.dump();
}

tsn::FlowSpec &flow_named(Scenario &sc, const std::string &name) {
    for (auto &f : sc.flows) {
        if (f.name == name)
            return f;
    }
    throw ConfigError(kFlowPrefix + name, "no such flow in the configuration");
}

void set_flow_key(tsn::FlowSpec &flow, const std::string &key, const std::string &value) {
    const FlowSetting *s = find_flow_setting(key);
    if (!s)
        throw ConfigError(kFlowPrefix + flow.name + "." + key, "unknown key");
    s->set(flow, value);
}

void set_key(Scenario &sc, const std::string &section, const std::string &key, const std::string &value) {
    const Setting *s = find_setting(section, key);
    if (!s)
        throw ConfigError(section + "." + key, "unknown key");
    s->set(sc, value);
}

void apply_section(Scenario &sc, const std::string &section, const pt::ptree &body) {
    if (boost::algorithm::starts_with(section, kFlowPrefix)) {
        const std::string name = section.substr(kFlowPrefix.size());
        if (name.empty() || name.find('.') != std::string::npos)
            throw ConfigError(section, "flow sections are named [flow.<name>] with a plain name");
        for (const auto &f : sc.flows) {
            if (f.name == name)
                throw ConfigError(section, "duplicate flow section");
        }
        const auto cls = body.get_child_optional(pt::ptree::path_type("class", '\0'));
        if (!cls)
            throw ConfigError(section + ".class", "required (NC, Video or BE)");
        tsn::FlowSpec flow;
        flow.name = name;
        set_flow_key(flow, "class", cls->data());
        for (const auto &[key, child] : body) {
            if (key != "class")
                set_flow_key(flow, key, child.data());
        }
        sc.flows.push_back(std::move(flow));
        return;
    }
    static const std::array<std::string, 4> known{"channel", "radio", "mobility", "sim"};
    if (std::find(known.begin(), known.end(), section) == known.end())
        throw ConfigError(section, "unknown section (valid: channel, radio, mobility, sim, flow.<name>)");
    for (const auto &[key, child] : body)
        set_key(sc, section, key, child.data());
}

} // namespace

void apply_override(Scenario &sc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(assignment), "override must look like section.key=value");
    const std::string path = boost::algorithm::trim_copy(std::string(assignment.substr(0, eq)));
    const std::string value = boost::algorithm::trim_copy(std::string(assignment.substr(eq + 1)));
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size())
        throw ConfigError(path, "override key must look like section.key");
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    if (boost::algorithm::starts_with(section, kFlowPrefix)) {
        tsn::FlowSpec &flow = flow_named(sc, section.substr(kFlowPrefix.size()));
        set_flow_key(flow, key, value);
        return;
    }
    set_key(sc, section, key, value);
}

Scenario parse_config(std::string_view text, std::span<const std::string> overrides) {
    // '#' comments are blanked so that line numbers stay intact.
    std::istringstream raw{std::string(text)};
    std::string cleaned;
    for (std::string line; std::getline(raw, line);) {
        const auto first = line.find_first_not_of(" \t\r");
        cleaned += (first != std::string::npos && line[first] == '#') ? "" : line;
        cleaned += '\n';
    }
    pt::ptree tree;
    std::istringstream in(cleaned);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ParseError(e.line(), e.message());
    }
    Scenario sc = default_scenario();
    for (const auto &[section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError(section, "key outside of any section");
        apply_section(sc, section, body);
    }
    for (const auto &o : overrides)
        apply_override(sc, o);
    validate(sc);
    return sc;
}

Scenario load_config(const std::filesystem::path &path, std::span<const std::string> overrides) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError(fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str(), overrides);
}

std::string dump_defaults() {
    const Scenario sc = default_scenario();
    std::string out;
    for (const auto &s : settings())
        out += fmt::format("{} = {}\n", s.name(), value_text(s.get(sc)));
    for (const auto cls : {tsn::TrafficClass::NC, tsn::TrafficClass::Video, tsn::TrafficClass::BE}) {
        const tsn::FlowSpec f = tsn::class_defaults(cls);
        for (const auto &fs : flow_settings()) {
            if (fs.key != "class")
                out += fmt::format("flow.<{}>.{} = {}\n", tsn::to_string(cls), fs.key, value_text(fs.get(f)));
        }
    }
    return out;
}

} // namespace tsnsim
