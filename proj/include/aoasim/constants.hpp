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

#ifndef AOASIM_CONSTANTS_HPP
#define AOASIM_CONSTANTS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aoasim
{

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Speed of light in vacuum, m/s (exact by SI definition)
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / pi); }

// Wraps any finite angle into (-pi, pi]
inline double wrap_angle(double rad)
{
    if (rad > -pi && rad <= pi)
        return rad;
    double r = std::remainder(rad, two_pi); // [-pi, pi]
    if (r <= -pi)
        r += two_pi;
    return r;
}

inline bool angle_in_range(double rad) { return rad > -pi && rad <= pi; }

namespace detail
{
inline void require(bool condition, const std::string &message)
{
    if (!condition)
        throw std::invalid_argument(message);
}

inline void require_angle(double rad, const char *what)
{
    if (!std::isfinite(rad) || !angle_in_range(rad))
        throw std::invalid_argument(std::string(what) + " must lie in (-pi, pi], got " + std::to_string(rad));
}

inline void require_eccentricity(double e)
{
    if (!(e >= 0.0 && e < 1.0))
        throw std::invalid_argument("Eccentricity must lie in [0, 1), got " + std::to_string(e));
}
} // namespace detail

} // namespace aoasim

#endif
