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

#ifndef TSNSIM_PHY_HPP
#define TSNSIM_PHY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsnsim/sim_time.hpp"

/// Radio abstraction: noise and SINR, BLER curves, link adaptation, transport
/// block sizing, HARQ, and numerology-driven slot timing.
namespace tsnsim::phy {

struct RadioConfig {
    double gnb_tx_power_dbm = 23.0;
    double ue_tx_power_dbm = 23.0;
    double carrier_ghz = 5.9;
    int numerology = 4;
    int num_rbs = 25;
    double noise_figure_db = 5.0;
    double target_bler = 0.01;
    int max_harq_tx = 4;
    int harq_rtt_slots = 4;
    // Uplink flows with PCP >= this value ride configured grants; lower-priority
    // uplink traffic waits for a scheduling-request occasion plus the grant delay.
    int configured_grant_min_pcp = 4;
    int sr_period_slots = 8;
    int ul_grant_delay_slots = 4;
    // Pins the BLER of every attempt, bypassing the curves (test and calibration hook).
    std::optional<double> fixed_bler;
};

/// Throws ConfigError naming the offending `radio.*` key.
void validate(const RadioConfig &cfg);

/// 1 ms / 2^mu. Throws ConfigError for mu outside 0..4.
SimTime slot_duration(int numerology);

/// Subcarrier spacing 15 kHz * 2^mu, in Hz.
double subcarrier_spacing_hz(int numerology);

/// Thermal noise over the allocated bandwidth plus the receiver noise figure, in dBm.
double noise_power_dbm(int num_rbs, int numerology, double noise_figure_db);

/// Co-channel transmitters seen by a receiver. Empty in single-cell scenarios.
class InterferenceRegistry {
public:
    struct Entry {
        std::string name;
        double rx_power_dbm;
    };

    void add(std::string name, double rx_power_dbm) { entries_.push_back({std::move(name), rx_power_dbm}); }
    const std::vector<Entry> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<Entry> entries_;
};

double sinr_db(double rx_power_dbm, double noise_dbm, const InterferenceRegistry &registry);

/// Per-MCS block error rate as a function of SINR.
///
/// Either a logistic family 1 / (1 + exp((sinr - midpoint[m]) / slope)) or a
/// sampled table per MCS with linear interpolation and constant extrapolation.
class BlerCurve {
public:
    struct TablePoint {
        double sinr_db;
        double bler;
    };

    static BlerCurve logistic(std::vector<double> midpoints_db, double slope_db);
    static BlerCurve table(std::vector<std::vector<TablePoint>> per_mcs);
    /// Midpoints -5 + 1.2 m dB for m = 0..27, slope 0.5 dB.
    static BlerCurve default_curve();
    /// CSV with header `mcs,sinr_db,bler`; MCS indices must be contiguous from 0.
    static BlerCurve load_csv(const std::string &path);

    int num_mcs() const;
    double bler(int mcs, double sinr_db) const;

private:
    std::vector<double> midpoints_;
    double slope_ = 1.0;
    std::vector<std::vector<TablePoint>> table_;
};

/// Highest MCS meeting the target BLER at `sinr_db`; 0 when none does.
int select_mcs(const BlerCurve &curve, double sinr_db, double target_bler);

/// Spectral efficiency (information bits per resource element) per MCS.
class McsTable {
public:
    explicit McsTable(std::vector<double> efficiency);
    /// 28 entries, 0.15 + 0.19 m capped at 5.55.
    static McsTable default_table();
    /// CSV with header `mcs,efficiency`; indices contiguous from 0.
    static McsTable load_csv(const std::string &path);

    int size() const { return static_cast<int>(eff_.size()); }
    double efficiency(int mcs) const;

private:
    std::vector<double> eff_;
};

inline constexpr int kSubcarriersPerRb = 12;
inline constexpr int kSymbolsPerSlot = 14;

/// floor(eff * 12 * 14 * num_rbs), at least 1.
std::int64_t transport_block_bits(const McsTable &table, int mcs, int num_rbs);

enum class HarqOutcome { Pending, Delivered, Failed };

struct HarqProcess {
    int attempts_used = 0;
    HarqOutcome outcome = HarqOutcome::Pending;
    SimTime first_tx_time{};
};

/// Attempt-level tallies feeding the HARQ error rate.
struct HarqTally {
    std::uint64_t total_tx = 0;
    std::uint64_t failed_tx = 0;
};

/// One transmission attempt. Succeeds iff `draw >= bler_now`; retransmissions are
/// independent draws (no combining gain). Throws InvariantViolation on a finished process.
HarqProcess harq_step(const HarqProcess &proc, double draw, double bler_now, int max_harq_tx, HarqTally &tally);

} // namespace tsnsim::phy

#endif
