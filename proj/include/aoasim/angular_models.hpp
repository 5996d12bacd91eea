// SPDX-License-Identifier: Apache-2.0
//
// aoasim - geometry-based angle-of-arrival simulator
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

#ifndef AOASIM_ANGULAR_MODELS_HPP
#define AOASIM_ANGULAR_MODELS_HPP

#include "antenna_pattern.hpp"
#include "constants.hpp"
#include "geometry.hpp"
#include "special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace aoasim
{

struct Tap
{
    double delay = 0.0;     // excess delay, seconds
    double power = 0.0;     // mean linear power P_i
    std::size_t paths = 50; // path count M_i

    bool operator==(const Tap &) const = default;
};

// Extremes of the power delay profile. Tap 0 has zero delay and carries the
// local scattering (and direct) power; taps 1..N each define one ellipse.
class TapProfile
{
  public:
    TapProfile() = default;

    explicit TapProfile(std::vector<Tap> taps) : taps_(std::move(taps))
    {
        detail::require(!taps_.empty(), "Tap profile must contain at least the zero-delay tap.");
        detail::require(taps_[0].delay == 0.0, "First tap must have zero delay.");
        for (std::size_t i = 0; i < taps_.size(); ++i)
        {
            detail::require(std::isfinite(taps_[i].power) && taps_[i].power > 0.0, "Tap powers must be finite and > 0.");
            detail::require(taps_[i].paths >= 1, "Each tap needs at least one path.");
            if (i > 0)
                detail::require(std::isfinite(taps_[i].delay) && taps_[i].delay > taps_[i - 1].delay,
                                "Tap delays must be strictly increasing.");
        }
    }

    TapProfile(std::initializer_list<Tap> taps) : TapProfile(std::vector<Tap>(taps)) {}

    std::size_t size() const { return taps_.size(); }
    std::size_t delayed_count() const { return taps_.empty() ? 0 : taps_.size() - 1; }
    const Tap &operator[](std::size_t i) const { return taps_[i]; }
    const std::vector<Tap> &taps() const { return taps_; }
    auto begin() const { return taps_.begin(); }
    auto end() const { return taps_.end(); }

    // P_R
    double total_power() const
    {
        double s = 0.0;
        for (const auto &t : taps_)
            s += t.power;
        return s;
    }

    std::size_t total_paths() const
    {
        std::size_t s = 0;
        for (const auto &t : taps_)
            s += t.paths;
        return s;
    }

    // Power-weighted rms delay spread, seconds
    double rms_delay_spread() const
    {
        const double pr = total_power();
        double m1 = 0.0, m2 = 0.0;
        for (const auto &t : taps_)
        {
            m1 += t.power * t.delay / pr;
            m2 += t.power * t.delay * t.delay / pr;
        }
        return std::sqrt(std::max(0.0, m2 - m1 * m1));
    }

    bool operator==(const TapProfile &) const = default;

  private:
    std::vector<Tap> taps_;
};

struct LocalScattering
{
    double mu = 0.0;    // von Mises concentration
    double kappa = 0.0; // Rician factor of the zero-delay tap

    void validate() const
    {
        detail::require(std::isfinite(mu) && mu >= 0.0, "von Mises concentration mu must be >= 0.");
        detail::require(std::isfinite(kappa) && kappa >= 0.0, "Rician factor kappa must be >= 0.");
    }
};

// One ellipse per delayed tap (taps 1..N)
inline EllipseSet make_ellipses(double distance_m, const TapProfile &taps)
{
    EllipseSet out;
    out.reserve(taps.delayed_count());
    for (std::size_t i = 1; i < taps.size(); ++i)
        out.push_back(ellipse_params(distance_m, taps[i].delay, i));
    return out;
}

// exp(mu cos phi) / (2 pi I0(mu)), evaluated in scaled form to stay finite at large mu
inline double von_mises_pdf(double phi, double mu)
{
    detail::require(std::isfinite(mu) && mu >= 0.0, "von Mises concentration mu must be >= 0.");
    detail::require_angle(phi, "Arrival angle");
    if (mu == 0.0)
        return 1.0 / two_pi;
    return std::exp(mu * (std::cos(phi) - 1.0)) / (two_pi * bessel_i0_scaled(mu));
}

// AOA density for a single ellipse, by change of variables from the AOD density
inline double delayed_aoa_pdf(double phi_r, const EllipseGeometry &ellipse, const AntennaPattern &pattern)
{
    const double phi_t = aoa_to_aod(phi_r, ellipse.eccentricity);
    return pattern.density(phi_t) / aoa_jacobian(phi_t, ellipse.eccentricity);
}

struct CompositeDensity
{
    double density = 0.0;            // continuous part, 1/rad
    double point_mass_at_zero = 0.0; // direct-path probability
};

// Mixture of the per-ellipse AOA densities, the von Mises local part and
// a point mass at phi_R = 0 for the direct path.
inline CompositeDensity composite_aoa_pdf(double phi_r, const EllipseSet &ellipses, const TapProfile &taps,
                                          const AntennaPattern &pattern, const LocalScattering &local)
{
    local.validate();
    detail::require(taps.size() >= 1, "Tap profile is empty.");
    detail::require(ellipses.size() == taps.delayed_count(), "Need exactly one ellipse per delayed tap.");
    detail::require_angle(phi_r, "Arrival angle");

    const double pr = taps.total_power();
    const double local_share = taps[0].power / pr;

    CompositeDensity out;
    for (std::size_t i = 1; i < taps.size(); ++i)
        out.density += taps[i].power / pr * delayed_aoa_pdf(phi_r, ellipses[i - 1], pattern);
    out.density += local_share / (local.kappa + 1.0) * von_mises_pdf(phi_r, local.mu);
    out.point_mass_at_zero = local.kappa / (local.kappa + 1.0) * local_share;
    return out;
}

} // namespace aoasim

#endif
