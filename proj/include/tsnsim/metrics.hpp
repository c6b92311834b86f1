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

#ifndef TSNSIM_METRICS_HPP
#define TSNSIM_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsnsim/chan38901.hpp"
#include "tsnsim/mobility.hpp"
#include "tsnsim/sim_time.hpp"
#include "tsnsim/tsn.hpp"

/// Per-run observations and their reduction to latency box statistics, HARQ
/// error rates per distance bin and SINR summaries.
namespace tsnsim::metrics {

struct LatencyRecord {
    std::uint32_t flow = 0;
    std::uint64_t seq = 0;
    SimTime created_at{};
    SimTime delivered_at{};

    SimTime latency() const { return delivered_at - created_at; }
};

struct HarqCell {
    std::uint64_t total_tx = 0;
    std::uint64_t failed_tx = 0;
    std::uint64_t pdu_total = 0;
    std::uint64_t pdu_failed = 0;
};

struct HarqKey {
    chan::InfProfile profile;
    mobility::DistanceBin bin;
    auto operator<=>(const HarqKey &) const = default;
};

struct SinrSample {
    SimTime t{};
    double sinr_db = 0.0;
    double d_2d_m = 0.0;
    mobility::DistanceBin bin = mobility::DistanceBin::D1;
};

struct FlowInfo {
    std::string name;
    tsn::TrafficClass traffic_class = tsn::TrafficClass::NC;
    int pcp = 0;
    tsn::FiveQiClass five_qi = tsn::FiveQiClass::DcGbr;
    tsn::Direction direction = tsn::Direction::Downlink;
    std::optional<int> test_case;
    std::optional<double> offered_kbps;
};

struct FlowCounters {
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_queue = 0;
    std::uint64_t dropped_harq = 0;
    std::uint64_t in_flight = 0;

    std::uint64_t dropped() const { return dropped_queue + dropped_harq; }
};

/// Everything one simulation run observed.
class MetricsStore {
public:
    MetricsStore() = default;
    MetricsStore(chan::InfProfile profile, std::vector<FlowInfo> flows);

    /// Throws InvariantViolation for an undelivered frame.
    const LatencyRecord &record_delivery(const tsn::Frame &frame);
    void record_attempt(mobility::DistanceBin bin, bool failed);
    void record_pdu(mobility::DistanceBin bin, bool failed);
    void record_sinr(const SinrSample &s) { sinr_.push_back(s); }

    /// Drops latency records created before `horizon`; returns how many.
    std::size_t discard_warmup(SimTime horizon);

    chan::InfProfile profile() const { return profile_; }
    const std::vector<FlowInfo> &flows() const { return flows_; }
    std::vector<FlowCounters> &counters() { return counters_; }
    const std::vector<FlowCounters> &counters() const { return counters_; }
    const std::vector<LatencyRecord> &latencies() const { return latencies_; }
    const std::map<HarqKey, HarqCell> &harq() const { return harq_; }
    const std::vector<SinrSample> &sinr() const { return sinr_; }

    /// Latencies of one flow, in milliseconds, in record order.
    std::vector<double> latencies_ms(std::uint32_t flow) const;
    std::vector<double> sinr_values() const;

    /// Resolved scenario settings, echoed into summary.json.
    nlohmann::ordered_json scenario_echo = nlohmann::ordered_json::object();
    std::uint64_t clamped_channel_samples = 0;

private:
    chan::InfProfile profile_ = chan::InfProfile::SL;
    std::vector<FlowInfo> flows_;
    std::vector<FlowCounters> counters_;
    std::vector<LatencyRecord> latencies_;
    std::map<HarqKey, HarqCell> harq_;
    std::vector<SinrSample> sinr_;
};

struct BoxStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;

    double iqr() const { return q3 - q1; }
};

/// Quantile of sorted data by linear interpolation between closest ranks:
/// position p * (n - 1), the inclusive convention.
double quantile_sorted(std::span<const double> sorted, double p);

/// Tukey box statistics. Whiskers sit on the most extreme samples within
/// 1.5 IQR of the quartiles; samples beyond are outliers (ascending).
/// Throws DomainError on empty input.
BoxStats box_stats(std::span<const double> samples);

struct HarqRates {
    std::optional<double> attempt_rate;  // failed_tx / total_tx
    std::optional<double> residual_rate; // pdu_failed / pdu_total
};

/// Empty cells yield nullopt rather than zero.
HarqRates harq_error_rate(const std::map<HarqKey, HarqCell> &counters, chan::InfProfile profile,
                          mobility::DistanceBin bin);

struct SinrSummary {
    double mean_db = 0.0;
    double p5_db = 0.0;
    double p50_db = 0.0;
    double p95_db = 0.0;
};

/// Throws DomainError on an empty trace.
SinrSummary sinr_summary(std::span<const double> trace_db);

/// latency.csv, harq.csv and sinr.csv into `dir` (created if needed). Throws IoError.
void export_csv(const MetricsStore &store, const std::filesystem::path &dir);
/// summary.json at `path`. Throws IoError.
void export_json(const MetricsStore &store, const std::filesystem::path &path);
/// Both of the above into `dir`.
void export_all(const MetricsStore &store, const std::filesystem::path &dir);

/// The summary document export_json writes.
nlohmann::ordered_json summary_json(const MetricsStore &store);

/// Rounds to six decimals, the precision of every exported number.
double round6(double v);

} // namespace tsnsim::metrics

#endif
