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

#include "tsnsim/sweep.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "tsnsim/engine.hpp"
#include "tsnsim/errors.hpp"

namespace tsnsim {

std::string_view to_string(SweepDim d) {
    switch (d) {
    case SweepDim::TestCases: return "test-cases";
    case SweepDim::Profiles: return "profiles";
    case SweepDim::Distances: return "distances";
    }
    return "?";
}

SweepDim parse_sweep_dim(std::string_view text) {
    for (auto d : {SweepDim::TestCases, SweepDim::Profiles, SweepDim::Distances}) {
        if (text == to_string(d))
            return d;
    }
    throw DomainError(fmt::format("unknown sweep dimension '{}' (valid: test-cases, profiles, distances)", text));
}

std::vector<SweepCell> sweep_cells(const Scenario &base, SweepDim dim) {
    std::vector<SweepCell> cells;
    switch (dim) {
    case SweepDim::TestCases:
        for (int tc = 1; tc <= tsn::kNumTestCases; ++tc) {
            Scenario sc = base;
            sc.test_case = tc;
            sc.flows.clear();
            cells.push_back({fmt::format("tc{}", tc), std::move(sc)});
        }
        break;
    case SweepDim::Profiles:
        for (auto p : kSweepProfiles) {
            Scenario sc = base;
            sc.channel.profile = p;
            cells.push_back({std::string(chan::to_string(p)), std::move(sc)});
        }
        break;
    case SweepDim::Distances: {
        std::vector<double> radii(kRingRadii.begin(), kRingRadii.end());
        radii.insert(radii.end(), base.mobility.sweep_extra_distances_m.begin(),
                     base.mobility.sweep_extra_distances_m.end());
        for (auto p : kSweepProfiles) {
            for (double r : radii) {
                Scenario sc = base;
                sc.channel.profile = p;
                sc.mobility.mode = MobilityMode::Ring;
                sc.mobility.ring_distance_m = r;
                cells.push_back({fmt::format("{}_{}m", chan::to_string(p), r), std::move(sc)});
            }
        }
        break;
    }
    }
    return cells;
}

std::vector<SweepRun> run_sweep(const std::vector<SweepCell> &cells, std::span<const std::uint64_t> seeds,
                                std::function<void(std::size_t, std::size_t)> on_done, unsigned max_threads) {
    if (seeds.empty())
        throw DomainError("a sweep needs at least one seed");
    for (const auto &c : cells)
        validate(c.scenario);
    const std::size_t total = cells.size() * seeds.size();
    std::vector<std::optional<metrics::MetricsStore>> stores(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                Scenario sc = cells[i / seeds.size()].scenario;
                sc.seed = seeds[i % seeds.size()];
                stores[i] = Simulation::build(sc).run();
            } catch (...) {
                errors[i] = std::current_exception();
            }
            const std::size_t n = ++done;
            if (on_done)
                on_done(n, total);
        }
    };
    unsigned n = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, total));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n; ++t)
            pool.emplace_back(worker);
        worker();
    }
    std::vector<SweepRun> runs;
    runs.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (errors[i]) {
            const std::string tag =
                fmt::format("cell {} seed {}: ", cells[i / seeds.size()].name, seeds[i % seeds.size()]);
            try {
                std::rethrow_exception(errors[i]);
            } catch (const ConfigError &e) {
                throw ConfigError(e.key(), tag + e.what());
            } catch (const IoError &e) {
                throw IoError(tag + e.what());
            } catch (const std::exception &e) {
                throw std::runtime_error(tag + e.what());
            }
        }
        runs.push_back({i / seeds.size(), seeds[i % seeds.size()], std::move(*stores[i])});
    }
    return runs;
}

namespace {

std::string num(const std::optional<double> &v) { return v ? fmt::format("{:.6f}", *v) : "NA"; }

} // namespace

std::string aggregate_csv(const std::vector<SweepCell> &cells, const std::vector<SweepRun> &runs) {
    std::string out = "cell,seed,profile,test_case,ring_distance_m,flow,class,offered_kbps,n,q1_ms,median_ms,q3_ms,"
                      "iqr_ms,mean_sinr_db,total_tx,failed_tx,attempt_rate,pdu_total,pdu_failed,residual_rate\n";
    for (const auto &r : runs) {
        const SweepCell &cell = cells.at(r.cell);
        const Scenario &sc = cell.scenario;
        const auto &store = r.store;
        metrics::HarqCell h;
        for (const auto &[key, c] : store.harq()) {
            h.total_tx += c.total_tx;
            h.failed_tx += c.failed_tx;
            h.pdu_total += c.pdu_total;
            h.pdu_failed += c.pdu_failed;
        }
        const auto sinr = store.sinr_values();
        const std::optional<double> mean_sinr =
            sinr.empty() ? std::nullopt : std::optional<double>(metrics::sinr_summary(sinr).mean_db);
        const std::optional<double> attempt =
            h.total_tx ? std::optional<double>(double(h.failed_tx) / double(h.total_tx)) : std::nullopt;
        const std::optional<double> residual =
            h.pdu_total ? std::optional<double>(double(h.pdu_failed) / double(h.pdu_total)) : std::nullopt;
        const std::string prefix =
            fmt::format("{},{},{},{},{}", cell.name, r.seed, chan::to_string(sc.channel.profile),
                        sc.test_case ? fmt::format("{}", *sc.test_case) : "NA",
                        sc.mobility.mode == MobilityMode::Ring ? fmt::format("{}", sc.mobility.ring_distance_m) : "NA");
        const std::string suffix = fmt::format("{},{},{},{},{},{},{}", num(mean_sinr), h.total_tx, h.failed_tx,
                                               num(attempt), h.pdu_total, h.pdu_failed, num(residual));
        if (store.flows().empty())
            out += fmt::format("{},NA,NA,NA,0,NA,NA,NA,NA,{}\n", prefix, suffix);
        for (std::uint32_t i = 0; i < store.flows().size(); ++i) {
            const auto &f = store.flows()[i];
            const auto lat = store.latencies_ms(i);
            std::string box = "NA,NA,NA,NA";
            if (!lat.empty()) {
                const auto b = metrics::box_stats(lat);
                box = fmt::format("{:.6f},{:.6f},{:.6f},{:.6f}", b.q1, b.median, b.q3, b.iqr());
            }
            out += fmt::format("{},{},{},{},{},{},{}\n", prefix, f.name, tsn::to_string(f.traffic_class),
                               num(f.offered_kbps), lat.size(), box, suffix);
        }
    }
    return out;
}

void write_sweep(const std::vector<SweepCell> &cells, const std::vector<SweepRun> &runs, SweepDim dim,
                 const std::filesystem::path &out) {
    const auto root = out / std::string(to_string(dim));
    for (const auto &r : runs)
        metrics::export_all(r.store, root / cells.at(r.cell).name / std::to_string(r.seed));
    const auto path = root / "aggregate.csv";
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    os << aggregate_csv(cells, runs);
    if (!os.flush())
        throw IoError(fmt::format("write to '{}' failed", path.string()));
}

} // namespace tsnsim
