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

#include "tsnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <fmt/os.h>

#include "tsnsim/errors.hpp"

namespace tsnsim::metrics {

using nlohmann::ordered_json;

MetricsStore::MetricsStore(chan::InfProfile profile, std::vector<FlowInfo> flows)
    : profile_(profile), flows_(std::move(flows)), counters_(flows_.size()) {}

const LatencyRecord &MetricsStore::record_delivery(const tsn::Frame &frame) {
    if (!frame.delivered_at)
        throw InvariantViolation(fmt::format("frame {} recorded before delivery", frame.id));
    if (*frame.delivered_at < frame.created_at)
        throw InvariantViolation(fmt::format("frame {} delivered before it was created", frame.id));
    latencies_.push_back({frame.flow, frame.seq, frame.created_at, *frame.delivered_at});
    return latencies_.back();
}

void MetricsStore::record_attempt(mobility::DistanceBin bin, bool failed) {
    HarqCell &c = harq_[{profile_, bin}];
    ++c.total_tx;
    if (failed)
        ++c.failed_tx;
}

void MetricsStore::record_pdu(mobility::DistanceBin bin, bool failed) {
    HarqCell &c = harq_[{profile_, bin}];
    ++c.pdu_total;
    if (failed)
        ++c.pdu_failed;
}

std::size_t MetricsStore::discard_warmup(SimTime horizon) {
    const auto before = latencies_.size();
    std::erase_if(latencies_, [horizon](const LatencyRecord &r) { return r.created_at < horizon; });
    return before - latencies_.size();
}

std::vector<double> MetricsStore::latencies_ms(std::uint32_t flow) const {
    std::vector<double> out;
    for (const auto &r : latencies_) {
        if (r.flow == flow)
            out.push_back(r.latency().ms());
    }
    return out;
}

std::vector<double> MetricsStore::sinr_values() const {
    std::vector<double> out;
    out.reserve(sinr_.size());
    for (const auto &s : sinr_)
        out.push_back(s.sinr_db);
    return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty())
        throw DomainError("quantile of an empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::span<const double> samples) {
    if (samples.empty())
        throw DomainError("box statistics need at least one sample");
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    BoxStats b;
    b.min = v.front();
    b.max = v.back();
    b.q1 = quantile_sorted(v, 0.25);
    b.median = quantile_sorted(v, 0.5);
    b.q3 = quantile_sorted(v, 0.75);
    const double lo_fence = b.q1 - 1.5 * b.iqr();
    const double hi_fence = b.q3 + 1.5 * b.iqr();
    b.whisker_low = b.max;
    b.whisker_high = b.min;
    for (double x : v) {
        if (x < lo_fence || x > hi_fence) {
            b.outliers.push_back(x);
            continue;
        }
        b.whisker_low = std::min(b.whisker_low, x);
        b.whisker_high = std::max(b.whisker_high, x);
    }
    // An interpolated quartile can sit beyond the last in-fence sample.
    b.whisker_low = std::min(b.whisker_low, b.q1);
    b.whisker_high = std::max(b.whisker_high, b.q3);
    return b;
}

HarqRates harq_error_rate(const std::map<HarqKey, HarqCell> &counters, chan::InfProfile profile,
                          mobility::DistanceBin bin) {
    HarqRates r;
    const auto it = counters.find({profile, bin});
    if (it == counters.end())
        return r;
    const HarqCell &c = it->second;
    if (c.total_tx > 0)
        r.attempt_rate = static_cast<double>(c.failed_tx) / static_cast<double>(c.total_tx);
    if (c.pdu_total > 0)
        r.residual_rate = static_cast<double>(c.pdu_failed) / static_cast<double>(c.pdu_total);
    return r;
}

SinrSummary sinr_summary(std::span<const double> trace_db) {
    if (trace_db.empty())
        throw DomainError("SINR summary of an empty trace");
    std::vector<double> v(trace_db.begin(), trace_db.end());
    std::sort(v.begin(), v.end());
    SinrSummary s;
    s.mean_db = std::accumulate(trace_db.begin(), trace_db.end(), 0.0) / static_cast<double>(trace_db.size());
    s.p5_db = quantile_sorted(v, 0.05);
    s.p50_db = quantile_sorted(v, 0.5);
    s.p95_db = quantile_sorted(v, 0.95);
    return s;
}

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r; // no "-0"
}

namespace {

constexpr std::array<mobility::DistanceBin, 4> kBins{mobility::DistanceBin::D1, mobility::DistanceBin::D2,
                                                     mobility::DistanceBin::D3, mobility::DistanceBin::OutOfRange};

std::string rate_field(const std::optional<double> &r) { return r ? fmt::format("{:.6f}", *r) : "NA"; }

ordered_json rate_json(const std::optional<double> &r) { return r ? ordered_json(round6(*r)) : ordered_json(nullptr); }

ordered_json box_json(const BoxStats &b, std::size_t n) {
    ordered_json j;
    j["n"] = n;
    j["min"] = round6(b.min);
    j["q1"] = round6(b.q1);
    j["median"] = round6(b.median);
    j["q3"] = round6(b.q3);
    j["max"] = round6(b.max);
    j["iqr"] = round6(b.iqr());
    j["whisker_low"] = round6(b.whisker_low);
    j["whisker_high"] = round6(b.whisker_high);
    ordered_json out = ordered_json::array();
    for (double x : b.outliers)
        out.push_back(round6(x));
    j["outliers"] = std::move(out);
    return j;
}

template <typename Fn> void write_file(const std::filesystem::path &path, Fn &&body) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    body(os);
    os.flush();
    if (!os)
        throw IoError(fmt::format("write to '{}' failed", path.string()));
}

void ensure_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError(fmt::format("cannot create directory '{}'", dir.string()));
}

} // namespace

void export_csv(const MetricsStore &store, const std::filesystem::path &dir) {
    ensure_dir(dir);
    write_file(dir / "latency.csv", [&](std::ostream &os) {
        os << "flow,seq,created_s,delivered_s,latency_ms\n";
        for (const auto &r : store.latencies()) {
            os << fmt::format("{},{},{:.6f},{:.6f},{:.6f}\n", store.flows().at(r.flow).name, r.seq,
                              r.created_at.seconds(), r.delivered_at.seconds(), r.latency().ms());
        }
    });
    write_file(dir / "harq.csv", [&](std::ostream &os) {
        os << "profile,bin,total_tx,failed_tx,attempt_rate,pdu_total,pdu_failed,residual_rate\n";
        for (auto bin : kBins) {
            if (store.harq().empty())
                break;
            const auto it = store.harq().find({store.profile(), bin});
            const HarqCell cell = it == store.harq().end() ? HarqCell{} : it->second;
            const HarqRates r = harq_error_rate(store.harq(), store.profile(), bin);
            os << fmt::format("{},{},{},{},{},{},{},{}\n", chan::to_string(store.profile()), mobility::to_string(bin),
                              cell.total_tx, cell.failed_tx, rate_field(r.attempt_rate), cell.pdu_total,
                              cell.pdu_failed, rate_field(r.residual_rate));
        }
    });
    write_file(dir / "sinr.csv", [&](std::ostream &os) {
        os << "t_s,sinr_db,d_2d,bin\n";
        for (const auto &s : store.sinr()) {
            os << fmt::format("{:.6f},{:.6f},{:.6f},{}\n", s.t.seconds(), s.sinr_db, s.d_2d_m,
                              mobility::to_string(s.bin));
        }
    });
}

ordered_json summary_json(const MetricsStore &store) {
    ordered_json j;
    j["scenario"] = store.scenario_echo;
    ordered_json flows = ordered_json::array();
    for (std::uint32_t i = 0; i < store.flows().size(); ++i) {
        const FlowInfo &f = store.flows()[i];
        const FlowCounters &c = store.counters()[i];
        ordered_json jf;
        jf["name"] = f.name;
        jf["class"] = tsn::to_string(f.traffic_class);
        jf["pcp"] = f.pcp;
        jf["five_qi"] = tsn::to_string(f.five_qi);
        jf["direction"] = tsn::to_string(f.direction);
        jf["test_case"] = f.test_case ? ordered_json(*f.test_case) : ordered_json(nullptr);
        jf["offered_kbps"] = f.offered_kbps ? ordered_json(round6(*f.offered_kbps)) : ordered_json(nullptr);
        jf["generated"] = c.generated;
        jf["delivered"] = c.delivered;
        jf["dropped_queue"] = c.dropped_queue;
        jf["dropped_harq"] = c.dropped_harq;
        jf["in_flight"] = c.in_flight;
        const auto lat = store.latencies_ms(i);
        jf["latency_ms"] = lat.empty() ? ordered_json(nullptr) : box_json(box_stats(lat), lat.size());
        flows.push_back(std::move(jf));
    }
    j["flows"] = std::move(flows);
    // Once any attempt exists, every bin of the run's profile is listed so that
    // unvisited bins show up as undefined rather than missing.
    ordered_json harq = ordered_json::array();
    for (auto bin : kBins) {
        if (store.harq().empty())
            break;
        const auto it = store.harq().find({store.profile(), bin});
        const HarqCell cell = it == store.harq().end() ? HarqCell{} : it->second;
        const HarqRates r = harq_error_rate(store.harq(), store.profile(), bin);
        ordered_json jh;
        jh["profile"] = chan::to_string(store.profile());
        jh["bin"] = mobility::to_string(bin);
        jh["total_tx"] = cell.total_tx;
        jh["failed_tx"] = cell.failed_tx;
        jh["attempt_rate"] = rate_json(r.attempt_rate);
        jh["pdu_total"] = cell.pdu_total;
        jh["pdu_failed"] = cell.pdu_failed;
        jh["residual_rate"] = rate_json(r.residual_rate);
        harq.push_back(std::move(jh));
    }
    j["harq"] = std::move(harq);
    const auto sinr = store.sinr_values();
    if (sinr.empty()) {
        j["sinr"] = nullptr;
    } else {
        const SinrSummary s = sinr_summary(sinr);
        ordered_json js;
        js["profile"] = chan::to_string(store.profile());
        js["n"] = sinr.size();
        js["mean_db"] = round6(s.mean_db);
        js["p5_db"] = round6(s.p5_db);
        js["p50_db"] = round6(s.p50_db);
        js["p95_db"] = round6(s.p95_db);
        j["sinr"] = std::move(js);
    }
    j["channel_clamped_samples"] = store.clamped_channel_samples;
    return j;
}

void export_json(const MetricsStore &store, const std::filesystem::path &path) {
    if (path.has_parent_path())
        ensure_dir(path.parent_path());
    const std::string text = summary_json(store).dump(2) + "\n";
    write_file(path, [&](std::ostream &os) { os << text; });
}

void export_all(const MetricsStore &store, const std::filesystem::path &dir) {
    export_csv(store, dir);
    export_json(store, dir / "summary.json");
}

} // namespace tsnsim::metrics
