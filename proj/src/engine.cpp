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

#include "tsnsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <optional>
#include <queue>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "tsnsim/chan38901.hpp"
#include "tsnsim/errors.hpp"
#include "tsnsim/phy.hpp"
#include "tsnsim/rng.hpp"
#include "tsnsim/tsn.hpp"

namespace tsnsim {

std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::ChannelUpdate: return "channel_update";
    case EventKind::MobilityUpdate: return "mobility_update";
    case EventKind::FrameArrival: return "frame_arrival";
    case EventKind::SlotTick: return "slot_tick";
    case EventKind::HarqFeedback: return "harq_feedback";
    case EventKind::WireDelivery: return "wire_delivery";
    case EventKind::MetricsFlush: return "metrics_flush";
    }
    return "?";
}

namespace {

constexpr int kMacDl = 0; // gNB transmitter
constexpr int kMacUl = 1; // UE transmitter
constexpr int kPortDown = 0; // CC -> gNB
constexpr int kPortUp = 1;   // gNB -> CC

enum class Stage : int { Generate, GrantReady, CoreOut };
enum class WireAction : int { PortFree, Deliver };

struct Event {
    SimTime time;
    EventKind kind;
    std::uint64_t seq;
    int a = 0;
    std::uint64_t b = 0;

    // Min-heap on (time, kind rank, insertion sequence).
    bool operator>(const Event &o) const {
        if (time != o.time)
            return time > o.time;
        if (kind != o.kind)
            return kind > o.kind;
        return seq > o.seq;
    }
};

struct FrameRec {
    tsn::Frame frame;
    int mac = kMacDl;
    std::uint32_t tbs_outstanding = 0;
    bool all_tbs_sent = false;
    bool failed = false;
    bool terminal = false;
};

struct TransportBlock {
    std::uint64_t frame = 0;
    int mac = kMacDl;
    int mcs = 0;
    phy::HarqProcess proc{};
    SimTime last_attempt{};
};

struct ActiveTx {
    std::uint64_t frame = 0;
    std::int64_t remaining_bits = 0;
};

struct Mac {
    explicit Mac(std::size_t capacity) : queue(capacity) {}

    tsn::PriorityQueueSet queue;
    std::optional<ActiveTx> active;
    std::deque<std::pair<SimTime, std::uint64_t>> retx; // (due, tb), due non-decreasing
    std::set<std::int64_t> pending_ticks;
    SimTime last_tick = SimTime::from_ps(-1);
    phy::HarqTally tally{};
};

struct WirePort {
    tsn::PriorityQueueSet queue;
    bool busy = false;
};

struct FlowRt {
    tsn::FlowSpec spec;
    RngStream rng;
    std::uint64_t next_seq = 0;
};

struct ChannelState {
    double sinr_db[2] = {0.0, 0.0};
    int mcs[2] = {0, 0};
};

} // namespace

struct Simulation::Impl {
    Scenario sc;
    chan::ClutterParams clutter;
    chan::NodeGeometry geom;
    mobility::WaypointConfig wp;
    mobility::Position gnb_pos;
    phy::BlerCurve curve = phy::BlerCurve::default_curve();
    phy::McsTable mcs_table = phy::McsTable::default_table();
    phy::InterferenceRegistry interference;
    SimTime slot, chan_period, mob_period, core_delay;
    double noise_dbm = 0.0;

    RngStreams rng;
    std::vector<FlowRt> flows;
    metrics::MetricsStore store;

    SimTime clock{};
    std::uint64_t seq_counter = 0;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;

    mobility::WaypointState ue{};
    mobility::DistanceBin ue_bin = mobility::DistanceBin::D1;
    ChannelState ch{};
    std::array<Mac, 2> macs;
    std::array<WirePort, 2> ports;
    std::vector<FrameRec> frames;
    std::vector<TransportBlock> tbs;

    std::function<void(const EventInfo &)> observer;
    std::function<void(SimTime, SimTime)> progress;
    bool trace_on = false;
    std::vector<mobility::TraceSample> trace;
    bool ran = false;

    explicit Impl(const Scenario &scenario)
        : sc(scenario), rng(scenario.seed),
          macs{Mac(scenario.queue_capacity), Mac(scenario.queue_capacity)},
          ports{WirePort{tsn::PriorityQueueSet(scenario.queue_capacity)},
                WirePort{tsn::PriorityQueueSet(scenario.queue_capacity)}} {}

    void push(SimTime t, EventKind kind, int a = 0, std::uint64_t b = 0) {
        if (t < clock)
            throw InvariantViolation(fmt::format("{} event scheduled at {} ps, before the clock at {} ps",
                                                 to_string(kind), t.ps(), clock.ps()));
        events.push({t, kind, seq_counter++, a, b});
    }

    // --- setup ---------------------------------------------------------------

    void setup() {
        clutter = sc.channel.clutter();
        geom = sc.channel.geometry();
        gnb_pos = {sc.mobility.gnb_x_m, sc.mobility.gnb_y_m, geom.bs_height_m};
        wp.bounds = sc.mobility.hall;
        wp.gnb = gnb_pos;
        wp.max_distance_m = sc.mobility.max_distance_m;
        wp.speed_min_mps = sc.mobility.speed_min_mps;
        wp.speed_max_mps = sc.mobility.speed_max_mps;
        wp.pause_s = sc.mobility.pause_s;
        wp.ut_height_m = geom.ut_height_m;

        if (!sc.bler_table.empty())
            curve = phy::BlerCurve::load_csv(sc.bler_table);
        if (!sc.mcs_table.empty())
            mcs_table = phy::McsTable::load_csv(sc.mcs_table);
        if (curve.num_mcs() > mcs_table.size())
            throw ConfigError("radio.mcs_table",
                              fmt::format("{} MCS entries, BLER curves cover {}", mcs_table.size(), curve.num_mcs()));

        slot = phy::slot_duration(sc.radio.numerology);
        chan_period = SimTime::from_seconds(sc.channel.update_period_s);
        mob_period = SimTime::from_seconds(sc.mobility.update_period_s);
        core_delay = SimTime::from_seconds(sc.core_delay_s);
        noise_dbm = phy::noise_power_dbm(sc.radio.num_rbs, sc.radio.numerology, sc.radio.noise_figure_db);
        if (chan_period.ps() <= 0)
            throw ConfigError("channel.update_period_ms", "must be at least 1 ps");
        if (mob_period.ps() <= 0)
            throw ConfigError("mobility.update_period_ms", "must be at least 1 ps");

        if (sc.mobility.mode == MobilityMode::Ring) {
            const double th = sc.mobility.ring_angle_deg * std::acos(-1.0) / 180.0;
            const double r = sc.mobility.ring_distance_m;
            ue.current = {gnb_pos.x + r * std::cos(th), gnb_pos.y + r * std::sin(th), geom.ut_height_m};
            ue.target = ue.current;
        } else {
            ue = mobility::initial_state(wp, rng.mobility);
        }
        ue_bin = mobility::distance_bin(mobility::distances(ue.current, gnb_pos).d_2d_m);

        std::vector<metrics::FlowInfo> infos;
        const auto specs = sc.effective_flows();
        for (std::size_t i = 0; i < specs.size(); ++i) {
            FlowRt f{specs[i], rng.traffic(i)};
            if (f.spec.periodic && !f.spec.interarrival_s.is_fixed())
                f.spec.interarrival_s =
                    tsn::Range::fixed(f.rng.uniform(f.spec.interarrival_s.lo, f.spec.interarrival_s.hi));
            metrics::FlowInfo info;
            info.name = f.spec.name;
            info.traffic_class = f.spec.traffic_class;
            info.pcp = f.spec.pcp;
            info.five_qi = f.spec.five_qi;
            info.direction = f.spec.direction;
            info.test_case = f.spec.test_case;
            if (f.spec.packet_bytes.is_fixed() && f.spec.interarrival_s.is_fixed())
                info.offered_kbps = tsn::offered_rate_kbps(f.spec);
            infos.push_back(std::move(info));
            flows.push_back(std::move(f));
        }
        store = metrics::MetricsStore(sc.channel.profile, std::move(infos));
        store.scenario_echo = describe(sc);

        push(SimTime{}, EventKind::ChannelUpdate);
        if (sc.mobility.mode == MobilityMode::RandomWaypoint)
            push(mob_period, EventKind::MobilityUpdate);
        for (std::size_t i = 0; i < flows.size(); ++i) {
            FlowRt &f = flows[i];
            const double jitter = sc.phase_jitter ? f.rng.uniform(0.0, f.spec.interarrival_s.lo) : 0.0;
            push(SimTime::from_seconds(jitter), EventKind::FrameArrival, static_cast<int>(Stage::Generate), i);
        }
        ensure_tick(kMacDl, SimTime{});
        ensure_tick(kMacUl, SimTime{});
        if (trace_on)
            record_trace();
    }

    // --- slots and HARQ ------------------------------------------------------

    void ensure_tick(int m, SimTime at) {
        Mac &mac = macs[m];
        SimTime t = at.ceil_to(slot);
        if (t <= mac.last_tick)
            t = mac.last_tick + slot;
        if (!mac.pending_ticks.empty() && *mac.pending_ticks.begin() <= t.ps())
            return; // an earlier tick will pick the work up
        if (mac.pending_ticks.insert(t.ps()).second)
            push(t, EventKind::SlotTick, m);
    }

    void on_slot_tick(int m) {
        Mac &mac = macs[m];
        mac.pending_ticks.erase(clock.ps());
        if (clock <= mac.last_tick)
            return;
        mac.last_tick = clock;

        std::optional<std::uint64_t> tx;
        if (!mac.retx.empty() && mac.retx.front().first <= clock) {
            tx = mac.retx.front().second;
            mac.retx.pop_front();
        } else {
            if (!mac.active) {
                if (auto f = mac.queue.dequeue())
                    mac.active = ActiveTx{f->id, static_cast<std::int64_t>(f->size_bytes) * 8};
            }
            if (mac.active) {
                FrameRec &fr = frames[mac.active->frame];
                const int mcs = ch.mcs[m];
                const std::int64_t bits =
                    std::min(mac.active->remaining_bits, phy::transport_block_bits(mcs_table, mcs, sc.radio.num_rbs));
                mac.active->remaining_bits -= bits;
                ++fr.tbs_outstanding;
                if (mac.active->remaining_bits == 0) {
                    fr.all_tbs_sent = true;
                    mac.active.reset();
                }
                tbs.push_back({fr.frame.id, m, mcs, {}, clock});
                tx = tbs.size() - 1;
            }
        }
        if (tx)
            attempt(*tx);

        const bool more = mac.active || !mac.queue.empty();
        if (more)
            ensure_tick(m, clock + slot);
        else if (!mac.retx.empty())
            ensure_tick(m, mac.retx.front().first);
    }

    void attempt(std::uint64_t id) {
        TransportBlock &tb = tbs[id];
        const double bler =
            sc.radio.fixed_bler ? *sc.radio.fixed_bler : curve.bler(tb.mcs, ch.sinr_db[tb.mac]);
        const double u = rng.phy.uniform();
        if (tb.proc.attempts_used == 0)
            tb.proc.first_tx_time = clock;
        tb.proc = phy::harq_step(tb.proc, u, bler, sc.radio.max_harq_tx, macs[tb.mac].tally);
        tb.last_attempt = clock;
        store.record_attempt(ue_bin, tb.proc.outcome != phy::HarqOutcome::Delivered);
        push(clock + slot, EventKind::HarqFeedback, tb.mac, id);
    }

    void on_harq_feedback(std::uint64_t id) {
        TransportBlock &tb = tbs[id];
        FrameRec &fr = frames[tb.frame];
        switch (tb.proc.outcome) {
        case phy::HarqOutcome::Delivered:
            store.record_pdu(ue_bin, false);
            --fr.tbs_outstanding;
            if (!fr.failed && fr.all_tbs_sent && fr.tbs_outstanding == 0)
                radio_received(fr);
            break;
        case phy::HarqOutcome::Failed:
            store.record_pdu(ue_bin, true);
            --fr.tbs_outstanding;
            if (!fr.failed) {
                fr.failed = true;
                Mac &mac = macs[tb.mac];
                if (mac.active && mac.active->frame == fr.frame.id) {
                    mac.active.reset();
                    fr.all_tbs_sent = true;
                }
                terminate(fr, Drop::Harq);
            }
            break;
        case phy::HarqOutcome::Pending:
            if (fr.failed) {
                // The frame is already lost; its remaining blocks are abandoned.
                --fr.tbs_outstanding;
                break;
            }
            const SimTime due = tb.last_attempt + slot * sc.radio.harq_rtt_slots;
            macs[tb.mac].retx.emplace_back(due, id);
            ensure_tick(tb.mac, due);
            break;
        }
    }

    // --- frame path ------------------------------------------------------------

    enum class Drop { Queue, Harq };

    void terminate(FrameRec &fr, Drop why) {
        if (fr.terminal)
            throw InvariantViolation(fmt::format("frame {} terminated twice", fr.frame.id));
        fr.terminal = true;
        auto &c = store.counters()[fr.frame.flow];
        if (why == Drop::Queue)
            ++c.dropped_queue;
        else
            ++c.dropped_harq;
    }

    void deliver(FrameRec &fr) {
        if (fr.terminal)
            throw InvariantViolation(fmt::format("frame {} delivered after termination", fr.frame.id));
        fr.terminal = true;
        fr.frame.delivered_at = clock;
        store.record_delivery(fr.frame);
        ++store.counters()[fr.frame.flow].delivered;
    }

    void mac_enqueue(int m, FrameRec &fr) {
        fr.mac = m;
        if (!macs[m].queue.enqueue(fr.frame)) {
            terminate(fr, Drop::Queue);
            return;
        }
        ensure_tick(m, clock);
    }

    void wire_enqueue(int p, FrameRec &fr) {
        WirePort &port = ports[p];
        if (!port.queue.enqueue(fr.frame)) {
            terminate(fr, Drop::Queue);
            return;
        }
        if (!port.busy)
            wire_start(p);
    }

    void wire_start(int p) {
        WirePort &port = ports[p];
        const auto f = port.queue.dequeue();
        if (!f)
            return;
        port.busy = true;
        const SimTime ser = tsn::serialization_time(sc.wired, f->size_bytes);
        push(clock + ser, EventKind::WireDelivery, p * 2 + static_cast<int>(WireAction::PortFree), f->id);
        push(clock + ser + sc.wired.propagation, EventKind::WireDelivery, p * 2 + static_cast<int>(WireAction::Deliver),
             f->id);
    }

    void on_wire(int code, std::uint64_t frame_id) {
        const int p = code / 2;
        if (static_cast<WireAction>(code % 2) == WireAction::PortFree) {
            ports[p].busy = false;
            wire_start(p);
            return;
        }
        FrameRec &fr = frames[frame_id];
        if (p == kPortDown)
            push(clock + core_delay, EventKind::FrameArrival, static_cast<int>(Stage::CoreOut), frame_id);
        else
            deliver(fr);
    }

    void radio_received(FrameRec &fr) {
        if (fr.mac == kMacDl)
            deliver(fr);
        else
            push(clock + core_delay, EventKind::FrameArrival, static_cast<int>(Stage::CoreOut), fr.frame.id);
    }

    void on_frame_arrival(Stage stage, std::uint64_t b) {
        switch (stage) {
        case Stage::Generate: generate(static_cast<std::uint32_t>(b)); break;
        case Stage::GrantReady: mac_enqueue(kMacUl, frames[b]); break;
        case Stage::CoreOut: {
            FrameRec &fr = frames[b];
            if (fr.mac == kMacUl)
                wire_enqueue(kPortUp, fr);
            else
                mac_enqueue(kMacDl, fr);
            break;
        }
        }
    }

    void generate(std::uint32_t idx) {
        FlowRt &f = flows[idx];
        const auto &spec = f.spec;
        const auto size = spec.packet_bytes.is_fixed()
                              ? static_cast<std::uint32_t>(spec.packet_bytes.lo)
                              : static_cast<std::uint32_t>(f.rng.uniform_int(
                                    static_cast<std::int64_t>(spec.packet_bytes.lo),
                                    static_cast<std::int64_t>(spec.packet_bytes.hi)));
        FrameRec fr;
        fr.frame.id = frames.size();
        fr.frame.flow = idx;
        fr.frame.seq = f.next_seq++;
        fr.frame.size_bytes = size;
        fr.frame.created_at = clock;
        fr.frame.pcp = spec.pcp;
        fr.mac = spec.direction == tsn::Direction::Uplink ? kMacUl : kMacDl;
        frames.push_back(fr);
        ++store.counters()[idx].generated;
        FrameRec &rec = frames.back();

        if (spec.direction == tsn::Direction::Downlink) {
            wire_enqueue(kPortDown, rec);
        } else if (spec.pcp >= sc.radio.configured_grant_min_pcp) {
            mac_enqueue(kMacUl, rec);
        } else {
            const SimTime sr = clock.ceil_to(slot * sc.radio.sr_period_slots);
            push(sr + slot * sc.radio.ul_grant_delay_slots, EventKind::FrameArrival, static_cast<int>(Stage::GrantReady),
                 rec.frame.id);
        }
        push(tsn::next_arrival(spec, clock, f.rng), EventKind::FrameArrival, static_cast<int>(Stage::Generate), idx);
    }

    // --- channel and mobility ------------------------------------------------

    void on_channel_update() {
        const auto d = mobility::distances(ue.current, gnb_pos);
        double d3 = d.d_3d_m;
        double d2 = d.d_2d_m;
        if (d3 < chan::kMinDistance3d || d3 > chan::kMaxDistance3d) {
            if (!sc.channel.lenient_range)
                throw DomainError(fmt::format("UE at 3D distance {:.6f} m from the gNB at t={:.6f} s is outside "
                                              "[1, 600] m (set channel.lenient_range to clamp)",
                                              d3, clock.seconds()));
            const double c = std::clamp(d3, chan::kMinDistance3d, chan::kMaxDistance3d);
            if (store.clamped_channel_samples == 0)
                spdlog::warn("3D distance {} m outside [1, 600] m, clamped to {} m", d3, c);
            ++store.clamped_channel_samples;
            const double dh = geom.bs_height_m - geom.ut_height_m;
            d2 = std::sqrt(std::max(c * c - dh * dh, 0.0));
            d3 = c;
        }
        chan::LinkInputs in;
        in.profile = sc.channel.profile;
        in.d_2d_m = d2;
        in.d_3d_m = d3;
        in.fc_ghz = sc.radio.carrier_ghz;
        in.clutter = clutter;
        in.geometry = geom;
        const chan::LinkSample s = chan::sample_link(in, rng.channel);
        const double loss = s.path_loss_db + s.shadow_fading_db;
        ch.sinr_db[kMacDl] = phy::sinr_db(sc.radio.gnb_tx_power_dbm - loss, noise_dbm, interference);
        ch.sinr_db[kMacUl] = phy::sinr_db(sc.radio.ue_tx_power_dbm - loss, noise_dbm, interference);
        for (int m : {kMacDl, kMacUl})
            ch.mcs[m] = phy::select_mcs(curve, ch.sinr_db[m], sc.radio.target_bler);
        store.record_sinr({clock, ch.sinr_db[kMacDl], d.d_2d_m, mobility::distance_bin(d.d_2d_m)});
        push(clock + chan_period, EventKind::ChannelUpdate);
    }

    void on_mobility_update() {
        ue = mobility::advance(ue, sc.mobility.update_period_s, wp, rng.mobility);
        ue_bin = mobility::distance_bin(mobility::distances(ue.current, gnb_pos).d_2d_m);
        if (trace_on)
            record_trace();
        push(clock + mob_period, EventKind::MobilityUpdate);
    }

    void record_trace() {
        const auto d = mobility::distances(ue.current, gnb_pos);
        trace.push_back({clock.seconds(), ue.current, d.d_2d_m, d.d_3d_m, mobility::distance_bin(d.d_2d_m)});
    }

    // --- main loop -------------------------------------------------------------

    metrics::MetricsStore run(SimTime until) {
        if (ran)
            throw InvariantViolation("a simulation instance runs only once");
        ran = true;
        if (until < SimTime{})
            throw DomainError("run horizon must be >= 0");
        push(until, EventKind::MetricsFlush);
        const SimTime second = SimTime::from_seconds(1.0);
        SimTime next_progress = second;
        while (!events.empty()) {
            const Event ev = events.top();
            events.pop();
            if (ev.time < clock)
                throw InvariantViolation(fmt::format("event at {} ps popped with the clock at {} ps", ev.time.ps(),
                                                     clock.ps()));
            clock = ev.time;
            if (observer)
                observer({ev.time, ev.kind, ev.seq, ev.kind == EventKind::SlotTick ? ev.a : -1});
            if (progress && clock >= next_progress) {
                progress(clock, until);
                while (next_progress <= clock)
                    next_progress += second;
            }
            switch (ev.kind) {
            case EventKind::ChannelUpdate: on_channel_update(); break;
            case EventKind::MobilityUpdate: on_mobility_update(); break;
            case EventKind::FrameArrival: on_frame_arrival(static_cast<Stage>(ev.a), ev.b); break;
            case EventKind::SlotTick: on_slot_tick(ev.a); break;
            case EventKind::HarqFeedback: on_harq_feedback(ev.b); break;
            case EventKind::WireDelivery: on_wire(ev.a, ev.b); break;
            case EventKind::MetricsFlush: return finalize();
            }
        }
        throw InvariantViolation("event queue drained before the metrics flush");
    }

    metrics::MetricsStore finalize() {
        for (const auto &fr : frames) {
            if (!fr.terminal)
                ++store.counters()[fr.frame.flow].in_flight;
        }
        for (std::size_t i = 0; i < flows.size(); ++i) {
            const auto &c = store.counters()[i];
            if (c.generated != c.delivered + c.dropped() + c.in_flight)
                throw InvariantViolation(fmt::format("flow '{}' does not conserve frames", flows[i].spec.name));
        }
        store.discard_warmup(SimTime::from_seconds(sc.warmup_s));
        if (progress)
            progress(clock, clock);
        return std::move(store);
    }
};

Simulation::Simulation(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Simulation::Simulation(Simulation &&) noexcept = default;
Simulation &Simulation::operator=(Simulation &&) noexcept = default;
Simulation::~Simulation() = default;

Simulation Simulation::build(const Scenario &scenario) {
    validate(scenario);
    auto impl = std::make_unique<Impl>(scenario);
    impl->setup();
    return Simulation(std::move(impl));
}

metrics::MetricsStore Simulation::run() { return run(SimTime::from_seconds(impl_->sc.duration_s)); }

metrics::MetricsStore Simulation::run(SimTime until) { return impl_->run(until); }

Topology Simulation::topology() const {
    return {{"cc-station", "gnb", "ue"}, {"wired:cc-station<->gnb", "radio:gnb<->ue"}};
}

const Scenario &Simulation::scenario() const { return impl_->sc; }

void Simulation::set_observer(std::function<void(const EventInfo &)> fn) { impl_->observer = std::move(fn); }

void Simulation::set_progress(std::function<void(SimTime, SimTime)> fn) { impl_->progress = std::move(fn); }

void Simulation::enable_trace(bool on) {
    impl_->trace_on = on;
    if (on && impl_->trace.empty() && !impl_->ran)
        impl_->record_trace();
}

const std::vector<mobility::TraceSample> &Simulation::trace() const { return impl_->trace; }

namespace {

[[noreturn]] void rethrow_tagged(std::exception_ptr ep, std::uint64_t seed) {
    const std::string tag = fmt::format("seed {}: ", seed);
    try {
        std::rethrow_exception(ep);
    } catch (const ConfigError &e) {
        throw ConfigError(e.key(), tag + e.what());
    } catch (const UnsupportedVariant &e) {
        throw UnsupportedVariant(tag + e.what());
    } catch (const DomainError &e) {
        throw DomainError(tag + e.what());
    } catch (const IoError &e) {
        throw IoError(tag + e.what());
    } catch (const InvariantViolation &e) {
        throw InvariantViolation(tag + e.what());
    } catch (const std::exception &e) {
        throw std::runtime_error(tag + e.what());
    }
}

} // namespace

std::vector<metrics::MetricsStore> run_batch(const Scenario &scenario, std::span<const std::uint64_t> seeds,
                                             unsigned max_threads) {
    if (seeds.empty())
        throw DomainError("run_batch needs at least one seed");
    validate(scenario);
    std::vector<std::optional<metrics::MetricsStore>> results(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                Scenario sc = scenario;
                sc.seed = seeds[i];
                results[i] = Simulation::build(sc).run();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, seeds.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (errors[i])
            rethrow_tagged(errors[i], seeds[i]);
    }
    std::vector<metrics::MetricsStore> out;
    out.reserve(results.size());
    for (auto &r : results)
        out.push_back(std::move(*r));
    return out;
}

} // namespace tsnsim
