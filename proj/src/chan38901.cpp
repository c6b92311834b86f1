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

#include "tsnsim/chan38901.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "tsnsim/errors.hpp"

namespace tsnsim::chan {

std::string_view to_string(InfProfile p) {
    switch (p) {
    case InfProfile::SL: return "InF-SL";
    case InfProfile::DL: return "InF-DL";
    case InfProfile::SH: return "InF-SH";
    case InfProfile::DH: return "InF-DH";
    case InfProfile::HH: return "InF-HH";
    }
    return "InF-?";
}

InfProfile parse_profile(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s.rfind("INF-", 0) == 0)
        s.erase(0, 4);
    for (InfProfile p : kAllProfiles) {
        if (to_string(p).substr(4) == s)
            return p;
    }
    throw DomainError(fmt::format("unknown InF profile '{}' (valid: InF-SL, InF-DL, InF-SH, InF-DH, InF-HH)", text));
}

bool is_dense(InfProfile p) { return p == InfProfile::DL || p == InfProfile::DH; }

bool is_high_bs(InfProfile p) { return p == InfProfile::SH || p == InfProfile::DH || p == InfProfile::HH; }

ClutterParams default_clutter(InfProfile p) {
    if (is_dense(p))
        return {2.0, 0.6, 6.0};
    return {10.0, 0.2, 2.0};
}

NodeGeometry default_geometry(InfProfile p) {
    return {is_high_bs(p) ? 8.0 : 1.5, 1.5};
}

namespace {

double checked_distance(double d_3d_m, RangeMode mode) {
    if (!std::isfinite(d_3d_m))
        throw DomainError("3D distance must be finite");
    if (d_3d_m >= kMinDistance3d && d_3d_m <= kMaxDistance3d)
        return d_3d_m;
    if (mode == RangeMode::Strict)
        throw DomainError(fmt::format("3D distance {} m outside the valid range [1, 600] m", d_3d_m));
    const double clamped = std::clamp(d_3d_m, kMinDistance3d, kMaxDistance3d);
    spdlog::warn("3D distance {} m outside [1, 600] m, clamped to {} m", d_3d_m, clamped);
    return clamped;
}

void check_frequency(double fc_ghz) {
    if (!(fc_ghz > 0.0) || !std::isfinite(fc_ghz))
        throw DomainError(fmt::format("carrier frequency must be positive, got {} GHz", fc_ghz));
}

double los_law(double d, double fc) { return 31.84 + 21.5 * std::log10(d) + 19.0 * std::log10(fc); }

double sl_law(double d, double fc) { return 33.0 + 25.5 * std::log10(d) + 20.0 * std::log10(fc); }

} // namespace

double path_loss_los(double d_3d_m, double fc_ghz, RangeMode mode) {
    check_frequency(fc_ghz);
    return los_law(checked_distance(d_3d_m, mode), fc_ghz);
}

double path_loss_nlos(InfProfile p, double d_3d_m, double fc_ghz, RangeMode mode) {
    if (p == InfProfile::HH)
        throw UnsupportedVariant("InF-HH has no NLOS path loss");
    check_frequency(fc_ghz);
    const double d = checked_distance(d_3d_m, mode);
    const double pl_los = los_law(d, fc_ghz);
    const double lf = 20.0 * std::log10(fc_ghz);
    const double ld = std::log10(d);
    switch (p) {
    case InfProfile::SL:
        return std::max(sl_law(d, fc_ghz), pl_los);
    case InfProfile::DL:
        return std::max({18.6 + 35.7 * ld + lf, pl_los, sl_law(d, fc_ghz)});
    case InfProfile::SH:
        return std::max(32.4 + 23.0 * ld + lf, pl_los);
    case InfProfile::DH:
        return std::max(33.63 + 21.9 * ld + lf, pl_los);
    case InfProfile::HH:
        break;
    }
    throw UnsupportedVariant("unknown InF profile");
}

double sigma_sf(InfProfile p, bool is_los) {
    if (is_los)
        return 4.0;
    switch (p) {
    case InfProfile::SL: return 5.7;
    case InfProfile::DL: return 7.2;
    case InfProfile::SH: return 5.9;
    case InfProfile::DH: return 4.0;
    case InfProfile::HH: break;
    }
    throw UnsupportedVariant("InF-HH has no NLOS shadow fading");
}

double k_subsec(InfProfile p, const ClutterParams &clutter, const NodeGeometry &geom) {
    if (!(clutter.d_clutter_m > 0.0))
        throw DomainError("clutter size must be positive");
    if (!(clutter.density > 0.0 && clutter.density < 1.0))
        throw DomainError(fmt::format("clutter density must lie in (0, 1), got {}", clutter.density));
    const double k = -clutter.d_clutter_m / std::log(1.0 - clutter.density);
    if (!is_high_bs(p) || p == InfProfile::HH)
        return k;
    if (!(geom.bs_height_m > geom.ut_height_m) || !(clutter.height_m > geom.ut_height_m))
        throw DomainError(fmt::format("{} needs h_BS > h_UT and h_c > h_UT (h_BS={}, h_UT={}, h_c={})",
                                      to_string(p), geom.bs_height_m, geom.ut_height_m, clutter.height_m));
    return k * (geom.bs_height_m - geom.ut_height_m) / (clutter.height_m - geom.ut_height_m);
}

double los_probability(InfProfile p, double d_2d_m, const ClutterParams &clutter, const NodeGeometry &geom) {
    if (!(d_2d_m >= 0.0))
        throw DomainError("2D distance must be non-negative");
    if (p == InfProfile::HH)
        return 1.0;
    return std::exp(-d_2d_m / k_subsec(p, clutter, geom));
}

LinkSample sample_link(const LinkInputs &in, RngStream &rng) {
    const double p_los = los_probability(in.profile, in.d_2d_m, in.clutter, in.geometry);
    const double u = rng.uniform();
    LinkSample s;
    s.d_2d_m = in.d_2d_m;
    s.d_3d_m = in.d_3d_m;
    s.fc_ghz = in.fc_ghz;
    s.is_los = u < p_los;
    s.path_loss_db = s.is_los ? path_loss_los(in.d_3d_m, in.fc_ghz, in.mode)
                              : path_loss_nlos(in.profile, in.d_3d_m, in.fc_ghz, in.mode);
    s.shadow_fading_db = rng.normal(0.0, sigma_sf(in.profile, s.is_los));
    return s;
}

} // namespace tsnsim::chan
