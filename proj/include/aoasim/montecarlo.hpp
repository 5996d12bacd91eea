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

#ifndef AOASIM_MONTECARLO_HPP
#define AOASIM_MONTECARLO_HPP

#include "angular_models.hpp"
#include "antenna_pattern.hpp"
#include "constants.hpp"
#include "geometry.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace aoasim
{

// ---- Samplers --------------------------------------------------------------

// Departure angle distributed according to the pattern's AOD density.
//  - Omni: uniform on (-pi, pi]
//  - Gaussian: N(0, sigma_T / sqrt(2)) with rejection of |phi| > pi (exact for the truncated target)
//  - Tabulated: inverse CDF of the interpolated power pattern
template <class URBG>
double sample_aod(const AntennaPattern &pattern, URBG &g)
{
    switch (pattern.kind())
    {
    case AntennaPattern::Kind::omni:
        return pi - two_pi * uniform01(g);
    case AntennaPattern::Kind::gaussian:
    {
        std::normal_distribution<double> normal(0.0, pattern.sigma() / std::sqrt(2.0));
        for (;;)
        {
            const double x = normal(g);
            if (x > -pi && x <= pi)
                return x;
        }
    }
    case AntennaPattern::Kind::tabulated:
    default:
        return pattern.tabulated_inverse_cdf(uniform01(g));
    }
}

// von Mises(0, mu) variate on (-pi, pi], Best-Fisher wrapped-Cauchy envelope rejection.
template <class URBG>
double sample_local_aoa(double mu, URBG &g)
{
    detail::require(std::isfinite(mu) && mu >= 0.0, "von Mises concentration mu must be >= 0.");
    if (mu == 0.0)
        return pi - two_pi * uniform01(g);

    double s;
    if (mu < 1e-5)
        s = 1.0 / mu + mu; // series limit of the expression below
    else
    {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * mu * mu);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * mu);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }

    double w;
    for (;;)
    {
        const double z = std::cos(pi * uniform01(g));
        w = (1.0 + s * z) / (s + z);
        const double y = mu * (s - w);
        const double v = uniform01(g);
        if (y * (2.0 - y) - v >= 0.0 || (v > 0.0 && std::log(y / v) + 1.0 - y >= 0.0))
            break;
    }
    const double angle = std::acos(std::clamp(w, -1.0, 1.0));
    return uniform01(g) < 0.5 ? wrap_angle(-angle) : angle;
}

// M draws from U(0, 2P/M); mean total power P
template <class URBG>
std::vector<double> sample_tap_powers(double power, std::size_t paths, URBG &g)
{
    detail::require(std::isfinite(power) && power > 0.0, "Tap power must be finite and > 0.");
    detail::require(paths >= 1, "Tap needs at least one path.");
    const double upper = 2.0 * power / static_cast<double>(paths);
    std::vector<double> out(paths);
    for (auto &p : out)
        p = upper * uniform01(g);
    return out;
}

// M0 draws from U(0, 2 P0 / ((1 + kappa) M0)); mean total P0 / (1 + kappa)
template <class URBG>
std::vector<double> sample_local_powers(double power, std::size_t paths, double kappa, URBG &g)
{
    detail::require(std::isfinite(kappa) && kappa >= 0.0, "Rician factor kappa must be >= 0.");
    return sample_tap_powers(power / (1.0 + kappa), paths, g);
}

// ---- Scenario and path sets -------------------------------------------------

// Fully resolved simulation input in SI units and radians
class Scenario
{
  public:
    Scenario(double distance_m, TapProfile taps, AntennaPattern pattern, LocalScattering local,
             std::uint64_t master_seed)
        : distance_(distance_m), taps_(std::move(taps)), pattern_(std::move(pattern)), local_(local),
          master_seed_(master_seed)
    {
        detail::require(std::isfinite(distance_) && distance_ >= 0.0, "Tx-Rx distance must be finite and >= 0.");
        detail::require(taps_.size() >= 1, "Tap profile is empty.");
        local_.validate();
        ellipses_ = make_ellipses(distance_, taps_);
        digest_ = compute_digest();
    }

    double distance() const { return distance_; }
    const TapProfile &taps() const { return taps_; }
    const AntennaPattern &pattern() const { return pattern_; }
    const LocalScattering &local() const { return local_; }
    const EllipseSet &ellipses() const { return ellipses_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t digest() const { return digest_; }

    Scenario with_pattern(AntennaPattern pattern) const
    {
        return Scenario(distance_, taps_, std::move(pattern), local_, master_seed_);
    }

    Scenario with_seed(std::uint64_t seed) const { return Scenario(distance_, taps_, pattern_, local_, seed); }

    // Analytic composite AOA density of this scenario
    CompositeDensity aoa_density(double phi_r) const
    {
        return composite_aoa_pdf(phi_r, ellipses_, taps_, pattern_, local_);
    }

  private:
    std::uint64_t compute_digest() const
    {
        Fnv1a h;
        h.add(distance_);
        for (const auto &t : taps_)
        {
            h.add(t.delay);
            h.add(t.power);
            h.add(static_cast<std::uint64_t>(t.paths));
        }
        h.add(static_cast<std::uint64_t>(pattern_.kind()));
        h.add(pattern_.hpbw());
        for (const auto &s : pattern_.samples())
        {
            h.add(s.angle);
            h.add(s.amplitude);
        }
        h.add(local_.mu);
        h.add(local_.kappa);
        h.add(master_seed_);
        return h.value();
    }

    double distance_;
    TapProfile taps_;
    AntennaPattern pattern_;
    LocalScattering local_;
    std::uint64_t master_seed_;
    EllipseSet ellipses_;
    std::uint64_t digest_ = 0;
};

struct PathSample
{
    std::size_t tap_index = 0;
    double aoa = 0.0;   // radians, (-pi, pi]
    double power = 0.0; // linear
    bool is_direct = false;

    bool operator==(const PathSample &) const = default;
};

struct PathSet
{
    std::vector<PathSample> paths;
    std::uint64_t scenario_digest = 0;
    std::uint64_t trial_seed = 0;

    double total_power() const
    {
        double s = 0.0;
        for (const auto &p : paths)
            s += p.power;
        return s;
    }

    bool operator==(const PathSet &) const = default;
};

// One realization of the arrival paths. Tap 0 yields M_0 von Mises paths plus,
// for kappa > 0, one deterministic direct path at phi_R = 0 with power
// kappa P_0 / (1 + kappa). Tap i >= 1 yields M_i paths whose departure angles
// follow the antenna pattern, mapped through the tap's ellipse.
inline PathSet generate_trial(const Scenario &scenario, std::uint64_t trial_index)
{
    PathSet out;
    out.scenario_digest = scenario.digest();
    out.trial_seed = trial_seed(scenario.master_seed(), trial_index);
    Engine g(out.trial_seed);

    const auto &taps = scenario.taps();
    const auto &local = scenario.local();
    out.paths.reserve(taps.total_paths() + 1);

    {
        const Tap &t0 = taps[0];
        std::vector<double> angles(t0.paths);
        for (auto &a : angles)
            a = sample_local_aoa(local.mu, g);
        const auto powers = sample_local_powers(t0.power, t0.paths, local.kappa, g);
        for (std::size_t j = 0; j < t0.paths; ++j)
            out.paths.push_back({0, angles[j], powers[j], false});
        if (local.kappa > 0.0)
            out.paths.push_back({0, 0.0, local.kappa * t0.power / (1.0 + local.kappa), true});
    }

    for (std::size_t i = 1; i < taps.size(); ++i)
    {
        const double e = scenario.ellipses()[i - 1].eccentricity;
        std::vector<double> angles(taps[i].paths);
        for (auto &a : angles)
            a = aod_to_aoa(sample_aod(scenario.pattern(), g), e);
        const auto powers = sample_tap_powers(taps[i].power, taps[i].paths, g);
        for (std::size_t j = 0; j < angles.size(); ++j)
            out.paths.push_back({i, angles[j], powers[j], false});
    }
    return out;
}

} // namespace aoasim

#endif
