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

#ifndef AOASIM_ANTENNA_PATTERN_HPP
#define AOASIM_ANTENNA_PATTERN_HPP

#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace aoasim
{

// Gaussian power pattern width from the half-power beamwidth:
// sigma_T = HPBW / (2 sqrt(ln 2)), so that exp(-(HPBW/2)^2 / sigma_T^2) = 1/2.
inline double sigma_from_hpbw(double hpbw_rad)
{
    detail::require(std::isfinite(hpbw_rad) && hpbw_rad > 0.0 && hpbw_rad <= two_pi,
                    "HPBW must lie in (0, 2*pi] radians.");
    return hpbw_rad / (2.0 * std::sqrt(std::numbers::ln2));
}

struct PatternSample
{
    double angle = 0.0;     // radians, (-pi, pi]
    double amplitude = 0.0; // normalized field amplitude, >= 0

    bool operator==(const PatternSample &) const = default;
};

// Azimuth pattern of the transmit antenna, boresight at phi_T = 0 (pointing at Rx).
// The induced AOD density is f_T(phi) = g_T^2(phi) / integral(g_T^2) on (-pi, pi].
class AntennaPattern
{
  public:
    enum class Kind
    {
        omni,
        gaussian,
        tabulated
    };

    static AntennaPattern omni() { return AntennaPattern{}; }

    static AntennaPattern gaussian(double hpbw_rad)
    {
        AntennaPattern p;
        p.kind_ = Kind::gaussian;
        p.sigma_ = sigma_from_hpbw(hpbw_rad);
        p.hpbw_ = hpbw_rad;
        // C(sigma_T) = 1 / (sqrt(pi) sigma_T erf(pi / sigma_T))
        p.norm_ = 1.0 / (std::sqrt(pi) * p.sigma_ * std::erf(pi / p.sigma_));
        return p;
    }

    // Amplitude is linearly interpolated between samples (circularly across +-pi),
    // squared, and renormalized to unit mass.
    static AntennaPattern tabulated(std::vector<PatternSample> samples)
    {
        detail::require(samples.size() >= 8, "Tabulated pattern needs at least 8 samples.");
        for (std::size_t k = 0; k < samples.size(); ++k)
        {
            detail::require_angle(samples[k].angle, "Pattern sample angle");
            detail::require(std::isfinite(samples[k].amplitude) && samples[k].amplitude >= 0.0,
                            "Pattern amplitudes must be finite and >= 0.");
            if (k > 0)
                detail::require(samples[k].angle > samples[k - 1].angle,
                                "Pattern sample angles must be strictly increasing.");
        }

        AntennaPattern p;
        p.kind_ = Kind::tabulated;
        p.samples_ = std::move(samples);

        const std::size_t n = p.samples_.size();
        p.cumulative_.assign(n + 1, 0.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            const auto [h, a, b] = p.segment(k);
            p.cumulative_[k + 1] = p.cumulative_[k] + h * (a * a + a * b + b * b) / 3.0;
        }
        detail::require(p.cumulative_[n] > 0.0, "Tabulated pattern is identically zero.");
        p.norm_ = 1.0 / p.cumulative_[n];
        return p;
    }

    Kind kind() const { return kind_; }
    double hpbw() const { return hpbw_; }   // Gaussian only, radians
    double sigma() const { return sigma_; } // Gaussian only, radians
    const std::vector<PatternSample> &samples() const { return samples_; }

    // AOD density in 1/rad
    double density(double phi_t) const
    {
        detail::require_angle(phi_t, "Departure angle");
        switch (kind_)
        {
        case Kind::omni:
            return 1.0 / two_pi;
        case Kind::gaussian:
            return norm_ * std::exp(-(phi_t * phi_t) / (sigma_ * sigma_));
        case Kind::tabulated:
        default:
        {
            const double g = interpolated_amplitude(phi_t);
            return norm_ * g * g;
        }
        }
    }

    // Inverse CDF of the tabulated AOD density, u in [0, 1].
    // The CDF starts at the first sample angle and runs once around the circle.
    double tabulated_inverse_cdf(double u) const
    {
        detail::require(kind_ == Kind::tabulated, "Inverse CDF is only tabulated for Tabulated patterns.");
        detail::require(u >= 0.0 && u <= 1.0, "CDF level must lie in [0, 1].");

        const double target = u * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
        std::size_t k = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
        k = std::min(k, samples_.size() - 1);
        // Skip zero-mass segments so the result lands on the support
        while (k + 1 < samples_.size() && cumulative_[k + 1] == cumulative_[k])
            ++k;

        const auto [h, a, b] = segment(k);
        const double need = target - cumulative_[k];
        const double d = b - a;
        auto mass = [&](double t) { return h * (a * a * t + a * d * t * t + d * d * t * t * t / 3.0); };

        double lo = 0.0, hi = 1.0;
        for (int it_count = 0; it_count < 64; ++it_count)
        {
            const double mid = 0.5 * (lo + hi);
            (mass(mid) < need ? lo : hi) = mid;
        }
        return wrap_angle(samples_[k].angle + 0.5 * (lo + hi) * h);
    }

  private:
    struct Segment
    {
        double width, a, b;
    };

    // Segment k joins sample k to k+1; the last one wraps to sample 0 + 2 pi
    Segment segment(std::size_t k) const
    {
        const std::size_t n = samples_.size();
        if (k + 1 < n)
            return {samples_[k + 1].angle - samples_[k].angle, samples_[k].amplitude, samples_[k + 1].amplitude};
        return {samples_[0].angle + two_pi - samples_[n - 1].angle, samples_[n - 1].amplitude, samples_[0].amplitude};
    }

    double interpolated_amplitude(double phi) const
    {
        const std::size_t n = samples_.size();
        if (phi < samples_[0].angle)
            phi += two_pi;
        std::size_t k = n - 1;
        if (phi <= samples_[n - 1].angle)
        {
            auto it = std::upper_bound(samples_.begin(), samples_.end(), phi,
                                       [](double v, const PatternSample &s) { return v < s.angle; });
            k = static_cast<std::size_t>(it - samples_.begin()) - 1;
            k = std::min(k, n - 1);
        }
        const auto [h, a, b] = segment(k);
        const double t = std::clamp((phi - samples_[k].angle) / h, 0.0, 1.0);
        return a + (b - a) * t;
    }

    Kind kind_ = Kind::omni;
    double hpbw_ = two_pi;
    double sigma_ = 0.0;
    double norm_ = 1.0 / two_pi;
    std::vector<PatternSample> samples_;
    std::vector<double> cumulative_;
};

inline double aod_pdf(double phi_t, const AntennaPattern &pattern) { return pattern.density(phi_t); }

} // namespace aoasim

#endif
