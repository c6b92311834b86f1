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

#ifndef TSNSIM_CHAN38901_HPP
#define TSNSIM_CHAN38901_HPP

#include <array>
#include <string>
#include <string_view>

#include "tsnsim/rng.hpp"

/// Large-scale indoor-factory (InF) channel from 3GPP TR 38.901:
/// LOS/NLOS path loss, LOS probability and log-normal shadow fading.
namespace tsnsim::chan {

enum class InfProfile { SL, DL, SH, DH, HH };

inline constexpr std::array<InfProfile, 5> kAllProfiles{InfProfile::SL, InfProfile::DL, InfProfile::SH,
                                                        InfProfile::DH, InfProfile::HH};

/// "InF-SL", "InF-DL", ...
std::string_view to_string(InfProfile p);

/// Accepts "InF-SL" or "SL" (case-insensitive). Throws DomainError listing the valid variants.
InfProfile parse_profile(std::string_view text);

/// Sparse clutter (SL, SH) versus dense clutter (DL, DH).
bool is_dense(InfProfile p);
/// Base station mounted above the clutter (SH, DH, HH).
bool is_high_bs(InfProfile p);

struct ClutterParams {
    double d_clutter_m = 10.0; // typical clutter size
    double density = 0.2;      // r, fraction of surface covered by clutter
    double height_m = 2.0;     // h_c
};

struct NodeGeometry {
    double bs_height_m = 1.5;
    double ut_height_m = 1.5;
};

ClutterParams default_clutter(InfProfile p);
NodeGeometry default_geometry(InfProfile p);

/// Handling of 3D distances outside the model's [1, 600] m validity range.
enum class RangeMode {
    Strict,  // throw DomainError
    Lenient, // clamp into range and log a warning
};

inline constexpr double kMinDistance3d = 1.0;
inline constexpr double kMaxDistance3d = 600.0;

struct LinkSample {
    double d_2d_m = 0.0;
    double d_3d_m = 0.0;
    double fc_ghz = 0.0;
    bool is_los = true;
    double path_loss_db = 0.0;
    double shadow_fading_db = 0.0;
};

double path_loss_los(double d_3d_m, double fc_ghz, RangeMode mode = RangeMode::Strict);

/// NLOS path loss, lower-bounded by the LOS law (and, for InF-DL, by InF-SL NLOS).
/// Throws UnsupportedVariant for InF-HH.
double path_loss_nlos(InfProfile p, double d_3d_m, double fc_ghz, RangeMode mode = RangeMode::Strict);

/// Shadow-fading standard deviation in dB. LOS is 4 dB for every profile.
double sigma_sf(InfProfile p, bool is_los);

/// Decay distance of the LOS probability. For the high-BS profiles the clutter
/// distance is scaled by (h_BS - h_UT) / (h_c - h_UT).
double k_subsec(InfProfile p, const ClutterParams &clutter, const NodeGeometry &geom);

double los_probability(InfProfile p, double d_2d_m, const ClutterParams &clutter, const NodeGeometry &geom);

struct LinkInputs {
    InfProfile profile = InfProfile::SL;
    double d_2d_m = 0.0;
    double d_3d_m = 1.0;
    double fc_ghz = 5.9;
    ClutterParams clutter{};
    NodeGeometry geometry{};
    RangeMode mode = RangeMode::Strict;
};

/// One stochastic channel draw: Bernoulli LOS state, matching path loss and a
/// zero-mean Gaussian shadow-fading term. Always consumes exactly one uniform
/// and one Gaussian from `rng`, whatever the profile.
LinkSample sample_link(const LinkInputs &in, RngStream &rng);

} // namespace tsnsim::chan

#endif
