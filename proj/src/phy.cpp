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

#include "tsnsim/phy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "csv_reader.hpp"
#include "tsnsim/errors.hpp"

namespace tsnsim::phy {

void validate(const RadioConfig &cfg) {
    if (cfg.numerology < 0 || cfg.numerology > 4)
        throw ConfigError("radio.numerology", fmt::format("must be in 0..4, got {}", cfg.numerology));
    if (cfg.num_rbs < 1)
        throw ConfigError("radio.num_rbs", "must be >= 1");
    if (!(cfg.target_bler > 0.0 && cfg.target_bler < 1.0))
        throw ConfigError("radio.target_bler", "must lie in (0, 1)");
    if (cfg.max_harq_tx < 1)
        throw ConfigError("radio.max_harq_tx", "must be >= 1");
    if (cfg.harq_rtt_slots < 1)
        throw ConfigError("radio.harq_rtt_slots", "must be >= 1");
    if (!(cfg.carrier_ghz > 0.0))
        throw ConfigError("radio.carrier_ghz", "must be positive");
    if (cfg.configured_grant_min_pcp < 0 || cfg.configured_grant_min_pcp > 8)
        throw ConfigError("radio.configured_grant_min_pcp", "must be in 0..8");
    if (cfg.sr_period_slots < 1)
        throw ConfigError("radio.sr_period_slots", "must be >= 1");
    if (cfg.ul_grant_delay_slots < 0)
        throw ConfigError("radio.ul_grant_delay_slots", "must be >= 0");
    if (cfg.fixed_bler && !(*cfg.fixed_bler >= 0.0 && *cfg.fixed_bler <= 1.0))
        throw ConfigError("radio.fixed_bler", "must lie in [0, 1]");
}

SimTime slot_duration(int numerology) {
    if (numerology < 0 || numerology > 4)
        throw ConfigError("radio.numerology", fmt::format("must be in 0..4, got {}", numerology));
    return SimTime::from_ps(1'000'000'000LL >> numerology);
}

double subcarrier_spacing_hz(int numerology) { return 15e3 * std::ldexp(1.0, numerology); }

double noise_power_dbm(int num_rbs, int numerology, double noise_figure_db) {
    const double bandwidth_hz = num_rbs * kSubcarriersPerRb * subcarrier_spacing_hz(numerology);
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double sinr_db(double rx_power_dbm, double noise_dbm, const InterferenceRegistry &registry) {
    if (registry.empty())
        return rx_power_dbm - noise_dbm;
    double denom_mw = std::pow(10.0, noise_dbm / 10.0);
    for (const auto &e : registry.entries())
        denom_mw += std::pow(10.0, e.rx_power_dbm / 10.0);
    return rx_power_dbm - 10.0 * std::log10(denom_mw);
}

BlerCurve BlerCurve::logistic(std::vector<double> midpoints_db, double slope_db) {
    if (midpoints_db.empty())
        throw DomainError("BLER curve needs at least one MCS");
    if (!(slope_db > 0.0))
        throw DomainError("BLER curve slope must be positive");
    BlerCurve c;
    c.midpoints_ = std::move(midpoints_db);
    c.slope_ = slope_db;
    return c;
}

BlerCurve BlerCurve::table(std::vector<std::vector<TablePoint>> per_mcs) {
    if (per_mcs.empty())
        throw DomainError("BLER table needs at least one MCS");
    for (std::size_t m = 0; m < per_mcs.size(); ++m) {
        const auto &pts = per_mcs[m];
        if (pts.empty())
            throw DomainError(fmt::format("BLER table has no points for MCS {}", m));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!(pts[i].bler >= 0.0 && pts[i].bler <= 1.0))
                throw DomainError(fmt::format("BLER table MCS {}: bler outside [0, 1]", m));
            if (i > 0 && !(pts[i].sinr_db > pts[i - 1].sinr_db))
                throw DomainError(fmt::format("BLER table MCS {}: SINR axis must be strictly increasing", m));
            if (i > 0 && !(pts[i].bler <= pts[i - 1].bler))
                throw DomainError(fmt::format("BLER table MCS {}: bler must not increase with SINR", m));
        }
    }
    BlerCurve c;
    c.table_ = std::move(per_mcs);
    return c;
}

BlerCurve BlerCurve::default_curve() {
    std::vector<double> mid(28);
    for (int m = 0; m < 28; ++m)
        mid[m] = -5.0 + 1.2 * m;
    return logistic(std::move(mid), 0.5);
}

BlerCurve BlerCurve::load_csv(const std::string &path) {
    const auto rows = detail::read_csv(path, {"mcs", "sinr_db", "bler"});
    std::map<int, std::vector<TablePoint>> by_mcs;
    for (const auto &r : rows)
        by_mcs[static_cast<int>(r[0])].push_back({r[1], r[2]});
    std::vector<std::vector<TablePoint>> per_mcs;
    for (auto &[m, pts] : by_mcs) {
        if (m != static_cast<int>(per_mcs.size()))
            throw DomainError(fmt::format("{}: MCS indices must be contiguous from 0", path));
        per_mcs.push_back(std::move(pts));
    }
    return table(std::move(per_mcs));
}

int BlerCurve::num_mcs() const {
    return static_cast<int>(table_.empty() ? midpoints_.size() : table_.size());
}

double BlerCurve::bler(int mcs, double sinr_db) const {
    if (mcs < 0 || mcs >= num_mcs())
        throw DomainError(fmt::format("unknown MCS {}", mcs));
    if (table_.empty()) {
        const double v = 1.0 / (1.0 + std::exp((sinr_db - midpoints_[mcs]) / slope_));
        return std::clamp(v, 0.0, 1.0);
    }
    const auto &pts = table_[mcs];
    if (sinr_db <= pts.front().sinr_db)
        return pts.front().bler;
    if (sinr_db >= pts.back().sinr_db)
        return pts.back().bler;
    const auto hi = std::upper_bound(pts.begin(), pts.end(), sinr_db,
                                     [](double s, const TablePoint &p) { return s < p.sinr_db; });
    const auto lo = hi - 1;
    const double t = (sinr_db - lo->sinr_db) / (hi->sinr_db - lo->sinr_db);
    return std::clamp(lo->bler + t * (hi->bler - lo->bler), 0.0, 1.0);
}

int select_mcs(const BlerCurve &curve, double sinr_db, double target_bler) {
    for (int m = curve.num_mcs() - 1; m > 0; --m) {
        if (curve.bler(m, sinr_db) <= target_bler)
            return m;
    }
    return 0;
}

McsTable::McsTable(std::vector<double> efficiency) : eff_(std::move(efficiency)) {
    if (eff_.empty())
        throw DomainError("MCS table needs at least one entry");
    for (double e : eff_) {
        if (!(e > 0.0))
            throw DomainError("MCS efficiency must be positive");
    }
}

McsTable McsTable::default_table() {
    std::vector<double> eff(28);
    for (int m = 0; m < 28; ++m)
        eff[m] = std::min(0.15 + 0.19 * m, 5.55);
    return McsTable(std::move(eff));
}

McsTable McsTable::load_csv(const std::string &path) {
    const auto rows = detail::read_csv(path, {"mcs", "efficiency"});
    std::vector<double> eff;
    for (const auto &r : rows) {
        if (static_cast<int>(r[0]) != static_cast<int>(eff.size()))
            throw DomainError(fmt::format("{}: MCS indices must be contiguous from 0 and sorted", path));
        eff.push_back(r[1]);
    }
    return McsTable(std::move(eff));
}

double McsTable::efficiency(int mcs) const {
    if (mcs < 0 || mcs >= size())
        throw DomainError(fmt::format("unknown MCS {}", mcs));
    return eff_[mcs];
}

std::int64_t transport_block_bits(const McsTable &table, int mcs, int num_rbs) {
    const double re = static_cast<double>(kSubcarriersPerRb) * kSymbolsPerSlot * num_rbs;
    const auto bits = static_cast<std::int64_t>(std::floor(table.efficiency(mcs) * re));
    return std::max<std::int64_t>(bits, 1);
}

HarqProcess harq_step(const HarqProcess &proc, double draw, double bler_now, int max_harq_tx, HarqTally &tally) {
    if (proc.outcome != HarqOutcome::Pending)
        throw InvariantViolation("HARQ step on a finished process");
    if (proc.attempts_used >= max_harq_tx)
        throw InvariantViolation("HARQ process exceeded its attempt budget");
    HarqProcess next = proc;
    ++next.attempts_used;
    ++tally.total_tx;
    if (draw >= bler_now) {
        next.outcome = HarqOutcome::Delivered;
        return next;
    }
    ++tally.failed_tx;
    if (next.attempts_used == max_harq_tx)
        next.outcome = HarqOutcome::Failed;
    return next;
}

} // namespace tsnsim::phy
