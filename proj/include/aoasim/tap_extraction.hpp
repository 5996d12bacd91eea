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

#ifndef AOASIM_TAP_EXTRACTION_HPP
#define AOASIM_TAP_EXTRACTION_HPP

#include "angular_models.hpp"
#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoasim
{

struct PdpSample
{
    double delay = 0.0; // seconds
    double power = 0.0; // linear

    bool operator==(const PdpSample &) const = default;
};

namespace detail
{
inline double to_db(double p)
{
    return p > 0.0 ? 10.0 * std::log10(p) : -std::numeric_limits<double>::infinity();
}

// Indices of strict local maxima; a plateau counts once, at its first sample,
// if it is bordered by lower values on both sides (only the right side for index 0).
inline std::vector<std::size_t> find_peaks(std::span<const double> p)
{
    std::vector<std::size_t> peaks;
    const std::size_t n = p.size();
    std::size_t i = 0;
    while (i < n)
    {
        std::size_t j = i;
        while (j + 1 < n && p[j + 1] == p[i])
            ++j;
        const bool left_ok = i == 0 || p[i - 1] < p[i];
        const bool right_ok = j + 1 < n && p[j + 1] < p[i];
        if (left_ok && right_ok)
            peaks.push_back(i);
        i = j + 1;
    }
    return peaks;
}

// Topographic prominence of peak i, in dB
inline double peak_prominence_db(std::span<const double> p, std::size_t i)
{
    const double h = p[i];
    double left_min = h, right_min = h;
    for (std::size_t k = i; k-- > 0;)
    {
        if (p[k] > h)
            break;
        left_min = std::min(left_min, p[k]);
    }
    for (std::size_t k = i + 1; k < p.size(); ++k)
    {
        if (p[k] > h)
            break;
        right_min = std::min(right_min, p[k]);
    }
    return to_db(h) - to_db(std::max(left_min, right_min));
}
} // namespace detail

// Taps from the local maxima of a sampled power delay profile. Delays are taken
// relative to the first sample, which always becomes tap 0; interior maxima
// with at least min_prominence_db of prominence become the delayed taps.
inline TapProfile extract_taps(std::span<const PdpSample> pdp, double min_prominence_db, std::size_t default_paths = 50)
{
    detail::require(pdp.size() >= 3, "PDP needs at least 3 samples.");
    detail::require(std::isfinite(min_prominence_db) && min_prominence_db >= 0.0, "Prominence must be >= 0 dB.");
    detail::require(default_paths >= 1, "Default path count must be >= 1.");

    std::vector<double> power(pdp.size());
    for (std::size_t k = 0; k < pdp.size(); ++k)
    {
        detail::require(std::isfinite(pdp[k].delay), "PDP delays must be finite.");
        detail::require(std::isfinite(pdp[k].power) && pdp[k].power >= 0.0, "PDP powers must be finite and >= 0.");
        if (k > 0)
            detail::require(pdp[k].delay > pdp[k - 1].delay, "PDP delays must be strictly increasing.");
        power[k] = pdp[k].power;
    }

    const auto peaks = detail::find_peaks(power);
    if (peaks.empty())
        throw std::invalid_argument("PDP has no strict local maximum (flat or monotonically rising profile).");
    detail::require(power[0] > 0.0, "PDP power at the first sample must be > 0.");

    std::vector<Tap> taps;
    taps.push_back({0.0, power[0], default_paths});
    for (std::size_t k : peaks)
    {
        if (k == 0)
            continue;
        if (detail::peak_prominence_db(power, k) >= min_prominence_db)
            taps.push_back({pdp[k].delay - pdp[0].delay, power[k], default_paths});
    }
    return TapProfile(std::move(taps));
}

} // namespace aoasim

#endif
