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

#ifndef TSNSIM_SIM_TIME_HPP
#define TSNSIM_SIM_TIME_HPP

#include <cmath>
#include <compare>
#include <cstdint>

namespace tsnsim {

/// Simulation time as an integer number of picoseconds.
///
/// Numerology-4 slots are 62.5 us, so slot and serialization arithmetic
/// stays exact over millions of slots. Conversions to seconds are only
/// used at the export boundary.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime from_ps(std::int64_t ps) { return SimTime(ps); }
    static SimTime from_seconds(double s) { return SimTime(std::llround(s * 1e12)); }
    static SimTime from_ms(double ms) { return SimTime(std::llround(ms * 1e9)); }
    static SimTime from_us(double us) { return SimTime(std::llround(us * 1e6)); }

    constexpr std::int64_t ps() const { return ps_; }
    constexpr double seconds() const { return static_cast<double>(ps_) * 1e-12; }
    constexpr double ms() const { return static_cast<double>(ps_) * 1e-9; }

    constexpr auto operator<=>(const SimTime &) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(ps_ + o.ps_); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(ps_ - o.ps_); }
    constexpr SimTime operator*(std::int64_t k) const { return SimTime(ps_ * k); }
    constexpr SimTime &operator+=(SimTime o) {
        ps_ += o.ps_;
        return *this;
    }

    /// Smallest multiple of `step` that is >= this time.
    constexpr SimTime ceil_to(SimTime step) const {
        const std::int64_t q = (ps_ + step.ps_ - 1) / step.ps_;
        return SimTime(q * step.ps_);
    }

private:
    constexpr explicit SimTime(std::int64_t ps) : ps_(ps) {}
    std::int64_t ps_ = 0;
};

} // namespace tsnsim

#endif
