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

#include "tsnsim/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <boost/algorithm/string.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tsnsim/chan38901.hpp"
#include "tsnsim/config.hpp"
#include "tsnsim/engine.hpp"
#include "tsnsim/errors.hpp"
#include "tsnsim/metrics.hpp"
#include "tsnsim/sweep.hpp"

namespace tsnsim::cli {

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string seed;
    std::string seeds;
    std::vector<std::string> overrides;
    std::string sweep_dim;
    bool progress = false;
    bool lenient = false;
    bool trace = false;
    bool dump_defaults = false;
    unsigned jobs = 0;
    std::string profiles = "SL,DL,SH,DH,HH";
    std::string distances = "1,10,100";
    double fc_ghz = 5.9;
};

std::uint64_t to_u64(const std::string &text) {
    const std::string s = boost::algorithm::trim_copy(text);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw ConfigError("seed", fmt::format("'{}' is not a seed", text));
    return v;
}

double to_dbl(const std::string &text) {
    const std::string s = boost::algorithm::trim_copy(text);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
        throw ConfigError("distances", fmt::format("'{}' is not a number", text));
    return v;
}

Scenario load(const Options &o) {
    std::vector<std::string> ov = o.overrides;
    if (o.lenient)
        ov.emplace_back("channel.lenient_range=true");
    Scenario sc = load_config(o.config, ov);
    if (!o.seed.empty())
        sc.seed = to_u64(o.seed);
    return sc;
}

int cmd_run(const Options &o, std::ostream &err) {
    const Scenario sc = load(o);
    Simulation sim = Simulation::build(sc);
    if (o.progress) {
        sim.set_progress([&err](SimTime now, SimTime until) {
            fmt::print(err, "[progress] t={:.1f}/{:.1f} s\n", now.seconds(), until.seconds());
        });
    }
    sim.enable_trace(o.trace);
    const metrics::MetricsStore store = sim.run();
    metrics::export_all(store, o.out);
    if (o.trace) {
        const auto path = std::filesystem::path(o.out) / "trajectory.csv";
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError(fmt::format("cannot write '{}'", path.string()));
        mobility::write_trace_csv(os, sim.trace());
        if (!os.flush())
            throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
    return kOk;
}

int cmd_sweep(const Options &o, std::ostream &err) {
    const Scenario base = load(o);
    SweepDim dim;
    try {
        dim = parse_sweep_dim(o.sweep_dim);
    } catch (const DomainError &e) {
        throw ConfigError("sweep-dim", e.what());
    }
    std::vector<std::uint64_t> seeds{base.seed};
    if (!o.seeds.empty())
        seeds = parse_seeds(o.seeds);
    const auto cells = sweep_cells(base, dim);
    std::function<void(std::size_t, std::size_t)> on_done;
    std::mutex mu;
    if (o.progress) {
        on_done = [&](std::size_t done, std::size_t total) {
            std::lock_guard lock(mu);
            fmt::print(err, "[progress] {}/{} runs\n", done, total);
        };
    }
    const auto runs = run_sweep(cells, seeds, on_done, o.jobs);
    write_sweep(cells, runs, dim, o.out);
    return kOk;
}

int cmd_channel_eval(const Options &o, std::ostream &out) {
    std::vector<chan::InfProfile> profiles;
    std::vector<std::string> names;
    boost::algorithm::split(names, o.profiles, boost::algorithm::is_any_of(","));
    for (const auto &n : names) {
        try {
            profiles.push_back(chan::parse_profile(boost::algorithm::trim_copy(n)));
        } catch (const DomainError &e) {
            throw ConfigError("profiles", e.what());
        }
    }
    const auto grid = parse_grid(o.distances);
    if (!(o.fc_ghz > 0.0))
        throw ConfigError("fc", "carrier frequency must be > 0");
    const auto mode = o.lenient ? chan::RangeMode::Lenient : chan::RangeMode::Strict;

    std::string csv = "profile,d_2D,d_3D,f_c,pl_los_db,pl_nlos_db,p_los\n";
    for (auto p : profiles) {
        const auto geom = chan::default_geometry(p);
        const auto clutter = chan::default_clutter(p);
        const double dh = geom.bs_height_m - geom.ut_height_m;
        for (double d2 : grid) {
            const double d3 = std::hypot(d2, dh);
            if (mode == chan::RangeMode::Strict && (d3 < chan::kMinDistance3d || d3 > chan::kMaxDistance3d))
                throw ConfigError("distances", fmt::format("3D distance {} m outside [1, 600] m "
                                                           "(use --lenient-range to clamp)", d3));
            const double los = chan::path_loss_los(d3, o.fc_ghz, mode);
            std::string nlos = "NA";
            if (p != chan::InfProfile::HH)
                nlos = fmt::format("{:.6f}", chan::path_loss_nlos(p, d3, o.fc_ghz, mode));
            const double plos = chan::los_probability(p, d2, clutter, geom);
            csv += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6f}\n", chan::to_string(p), d2, d3, o.fc_ghz, los,
                               nlos, plos);
        }
    }
    if (o.out.empty() || o.out == "-") {
        out << csv;
        return kOk;
    }
    const std::filesystem::path path(o.out);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    os << csv;
    if (!os.flush())
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    return kOk;
}

int cmd_validate(const Options &o, std::ostream &out) {
    if (o.dump_defaults) {
        out << dump_defaults();
        if (o.config.empty())
            return kOk;
    }
    if (o.config.empty())
        throw ConfigError("config", "validate needs --config or --dump-defaults");
    const Scenario sc = load(o);
    (void)Simulation::build(sc);
    fmt::print(out, "ok: {}\n", o.config);
    return kOk;
}

} // namespace

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const auto lo = to_u64(text.substr(0, dots));
        const auto hi = to_u64(text.substr(dots + 2));
        if (hi < lo)
            throw ConfigError("seeds", fmt::format("empty seed range '{}'", text));
        for (auto s = lo; s <= hi; ++s)
            seeds.push_back(s);
        return seeds;
    }
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
    for (const auto &p : parts)
        seeds.push_back(to_u64(p));
    return seeds;
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, text, boost::algorithm::is_any_of(":"));
        if (parts.size() != 3)
            throw ConfigError("distances", "range grids look like start:stop:step");
        const double a = to_dbl(parts[0]), b = to_dbl(parts[1]), step = to_dbl(parts[2]);
        if (!(step > 0.0) || b < a)
            throw ConfigError("distances", "range grid needs step > 0 and start <= stop");
        const auto n = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9));
        for (std::int64_t i = 0; i <= n; ++i)
            grid.push_back(a + static_cast<double>(i) * step);
        return grid;
    }
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
    for (const auto &p : parts)
        grid.push_back(to_dbl(p));
    return grid;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Discrete-event 5G-TSN indoor-factory simulator", "tsnsim"};
    app.require_subcommand(1);
    Options o;

    auto *run_cmd = app.add_subcommand("run", "Run one scenario and export its metrics");
    run_cmd->add_option("--config", o.config, "Scenario file")->required();
    run_cmd->add_option("--out", o.out, "Output directory")->required();
    run_cmd->add_option("--seed", o.seed, "Seed (overrides sim.seed)");
    run_cmd->add_option("--override", o.overrides, "section.key=value (repeatable)");
    run_cmd->add_flag("--progress", o.progress, "Simulated-time progress on stderr");
    run_cmd->add_flag("--lenient-range", o.lenient, "Clamp out-of-range channel distances");
    run_cmd->add_flag("--trace", o.trace, "Also write trajectory.csv");

    auto *sweep_cmd = app.add_subcommand("sweep", "Run a test-case, profile or distance grid");
    sweep_cmd->add_option("--config", o.config, "Base scenario file")->required();
    sweep_cmd->add_option("--out", o.out, "Output directory")->required();
    sweep_cmd->add_option("--sweep-dim", o.sweep_dim, "test-cases | profiles | distances")->required();
    sweep_cmd->add_option("--seeds", o.seeds, "Seeds: 1..10 or 1,2,3");
    sweep_cmd->add_option("--seed", o.seed, "Single seed");
    sweep_cmd->add_option("--override", o.overrides, "section.key=value (repeatable)");
    sweep_cmd->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
    sweep_cmd->add_flag("--progress", o.progress, "Completed runs on stderr");
    sweep_cmd->add_flag("--lenient-range", o.lenient, "Clamp out-of-range channel distances");

    auto *chan_cmd = app.add_subcommand("channel-eval", "Deterministic path-loss and LOS-probability table");
    chan_cmd->add_option("--profiles", o.profiles, "Comma-separated profiles")->capture_default_str();
    chan_cmd->add_option("--distances", o.distances, "2D distances: 1,10,100 or start:stop:step")
        ->capture_default_str();
    chan_cmd->add_option("--fc", o.fc_ghz, "Carrier frequency in GHz")->capture_default_str();
    chan_cmd->add_option("--out", o.out, "Output CSV (stdout when omitted)");
    chan_cmd->add_flag("--lenient-range", o.lenient, "Clamp out-of-range distances");

    auto *val_cmd = app.add_subcommand("validate", "Check a scenario file without running it");
    val_cmd->add_option("--config", o.config, "Scenario file");
    val_cmd->add_option("--override", o.overrides, "section.key=value (repeatable)");
    val_cmd->add_option("--seed", o.seed, "Seed");
    val_cmd->add_flag("--dump-defaults", o.dump_defaults, "Print every setting with its default");

    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        // Help for a subcommand is reported as a parse error with exit code 0.
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return kOk;
        }
        fmt::print(err, "error: {}\n", e.what());
        return kUsage;
    }

    try {
        if (*run_cmd)
            return cmd_run(o, err);
        if (*sweep_cmd)
            return cmd_sweep(o, err);
        if (*chan_cmd)
            return cmd_channel_eval(o, out);
        return cmd_validate(o, out);
    } catch (const ConfigError &e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kConfig;
    } catch (const IoError &e) {
        fmt::print(err, "i/o error: {}\n", e.what());
        return kIo;
    } catch (const std::filesystem::filesystem_error &e) {
        fmt::print(err, "i/o error: {}\n", e.what());
        return kIo;
    } catch (const std::exception &e) {
        fmt::print(err, "runtime error: {}\n", e.what());
        return kRuntime;
    }
}

} // namespace tsnsim::cli
