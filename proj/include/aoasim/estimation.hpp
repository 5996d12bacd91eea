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

#ifndef AOASIM_ESTIMATION_HPP
#define AOASIM_ESTIMATION_HPP

#include "constants.hpp"
#include "montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace aoasim
{

// Power-weighted AOA histogram on uniform bins over (-pi, pi]. Bin k covers
// [-pi + k w, -pi + (k+1) w). The direct path is kept apart as a point mass at 0.
class AngularSpectrum
{
  public:
    static constexpr double normalization_tolerance = 1e-9;

    AngularSpectrum() = default;

    AngularSpectrum(std::vector<double> density, double point_mass_at_zero, std::size_t sample_count)
        : density_(std::move(density)), point_mass_(point_mass_at_zero), sample_count_(sample_count)
    {
        detail::require(density_.size() >= 8, "Angular spectrum needs at least 8 bins.");
        for (double d : density_)
            detail::require(std::isfinite(d) && d >= 0.0, "Spectrum densities must be finite and >= 0.");
        detail::require(std::isfinite(point_mass_) && point_mass_ >= 0.0, "Point mass must be finite and >= 0.");
    }

    std::size_t bin_count() const { return density_.size(); }
    double bin_width() const { return two_pi / static_cast<double>(density_.size()); }
    double bin_lower_edge(std::size_t k) const { return -pi + static_cast<double>(k) * bin_width(); }
    double bin_center(std::size_t k) const { return -pi + (static_cast<double>(k) + 0.5) * bin_width(); }

    std::vector<double> bin_edges() const
    {
        std::vector<double> edges(density_.size() + 1);
        for (std::size_t k = 0; k < edges.size(); ++k)
            edges[k] = bin_lower_edge(k);
        edges.back() = pi;
        return edges;
    }

    const std::vector<double> &density() const { return density_; }
    double density(std::size_t k) const { return density_[k]; }
    double probability(std::size_t k) const { return density_[k] * bin_width(); }
    double point_mass_at_zero() const { return point_mass_; }
    std::size_t sample_count() const { return sample_count_; }

    double total_mass() const
    {
        double s = point_mass_;
        for (std::size_t k = 0; k < density_.size(); ++k)
            s += probability(k);
        return s;
    }

    bool is_normalized(double tol = normalization_tolerance) const { return std::abs(total_mass() - 1.0) <= tol; }

    static std::size_t bin_index(double angle, std::size_t bins)
    {
        const double w = two_pi / static_cast<double>(bins);
        const auto k = static_cast<std::size_t>(std::max(0.0, std::floor((angle + pi) / w)));
        return std::min(k, bins - 1);
    }

    // Histogram density at an angle (continuous part only), 1/rad
    double density_at(double angle) const
    {
        detail::require_angle(angle, "Angle");
        return density_[bin_index(angle, density_.size())];
    }

    bool operator==(const AngularSpectrum &) const = default;

  private:
    std::vector<double> density_;
    double point_mass_ = 0.0;
    std::size_t sample_count_ = 0;
};

// Bin probability = power of the non-direct paths in the bin / total power (direct included)
inline AngularSpectrum estimate_pdf(const PathSet &paths, std::size_t bin_count)
{
    detail::require(bin_count >= 8, "Bin count must be >= 8.");
    detail::require(!paths.paths.empty(), "Cannot estimate a spectrum from an empty path set.");

    const double total = paths.total_power();
    detail::require(total > 0.0, "Path set carries no power.");

    std::vector<double> prob(bin_count, 0.0);
    double direct = 0.0;
    for (const auto &p : paths.paths)
    {
        detail::require_angle(p.aoa, "Path arrival angle");
        if (p.is_direct)
            direct += p.power;
        else
            prob[AngularSpectrum::bin_index(p.aoa, bin_count)] += p.power;
    }

    const double w = two_pi / static_cast<double>(bin_count);
    for (auto &v : prob)
        v = v / total / w;
    return AngularSpectrum(std::move(prob), direct / total, paths.paths.size());
}

// Per-bin mean of densities and point masses
inline AngularSpectrum average_spectra(std::span<const AngularSpectrum> spectra)
{
    detail::require(!spectra.empty(), "Nothing to average.");
    const std::size_t bins = spectra.front().bin_count();
    std::vector<double> acc(bins, 0.0);
    double mass = 0.0;
    std::size_t samples = 0;
    for (const auto &s : spectra)
    {
        detail::require(s.bin_count() == bins, "Cannot average spectra with different binning.");
        for (std::size_t k = 0; k < bins; ++k)
            acc[k] += s.density(k);
        mass += s.point_mass_at_zero();
        samples += s.sample_count();
    }
    const double n = static_cast<double>(spectra.size());
    for (auto &v : acc)
        v /= n;
    return AngularSpectrum(std::move(acc), mass / n, samples);
}

// rms angle spread with linear moments over bin centers; the point mass sits at 0
inline double rms_angle_spread(const AngularSpectrum &spectrum)
{
    detail::require(spectrum.is_normalized(), "rms_angle_spread needs a normalized spectrum.");
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < spectrum.bin_count(); ++k)
    {
        const double phi = spectrum.bin_center(k);
        const double p = spectrum.probability(k);
        m1 += phi * p;
        m2 += phi * phi * p;
    }
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

// Same moments taken over the raw paths instead of histogram bins
inline double rms_angle_spread_paths(const PathSet &paths)
{
    const double total = paths.total_power();
    detail::require(total > 0.0, "Path set carries no power.");
    double m1 = 0.0, m2 = 0.0;
    for (const auto &p : paths.paths)
    {
        const double w = p.power / total;
        m1 += p.aoa * w;
        m2 += p.aoa * p.aoa * w;
    }
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

struct EmpiricalPoint
{
    double angle = 0.0;   // radians
    double density = 0.0; // 1/rad
};

// Unweighted sum of squared density differences at the empirical abscissae
inline double lse(const std::function<double(double)> &model, std::span<const EmpiricalPoint> empirical)
{
    detail::require(!empirical.empty(), "Empirical data set is empty.");
    double s = 0.0;
    for (const auto &pt : empirical)
    {
        detail::require_angle(pt.angle, "Empirical angle");
        const double d = model(pt.angle) - pt.density;
        s += d * d;
    }
    return s;
}

inline double lse(const AngularSpectrum &model, std::span<const EmpiricalPoint> empirical)
{
    return lse([&model](double a) { return model.density_at(a); }, empirical);
}

} // namespace aoasim

#endif
