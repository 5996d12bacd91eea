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

#ifndef AOASIM_GEOMETRY_HPP
#define AOASIM_GEOMETRY_HPP

#include "constants.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

// Multi-elliptical scattering geometry in the azimuth plane.
//
// Tx and Rx sit at the foci of confocal ellipses, one ellipse per delayed tap.
// Departure angles phi_T are measured at Tx from the Tx->Rx direction, arrival
// angles phi_R at Rx from the Rx->Tx direction. Both are wrapped to (-pi, pi].

namespace aoasim
{

struct EllipseGeometry
{
    double major_axis_2a = 0.0; // meters
    double eccentricity = 0.0;  // D / 2a, in [0, 1)
    std::size_t tap_index = 0;

    double semi_major_axis() const { return 0.5 * major_axis_2a; }
};

using EllipseSet = std::vector<EllipseGeometry>;

// Ellipse for a tap with excess delay tau: 2a = D + c*tau, e = D / 2a.
inline EllipseGeometry ellipse_params(double distance_m, double tau_s, std::size_t tap_index = 0)
{
    detail::require(std::isfinite(distance_m) && distance_m >= 0.0, "Tx-Rx distance must be finite and >= 0.");
    detail::require(std::isfinite(tau_s) && tau_s > 0.0,
                    "Tap delay must be > 0; the zero-delay tap models local scattering and has no ellipse.");

    EllipseGeometry g;
    g.major_axis_2a = distance_m + speed_of_light * tau_s;
    g.eccentricity = distance_m == 0.0 ? 0.0 : distance_m / g.major_axis_2a;
    g.tap_index = tap_index;
    return g;
}

// Maps a departure angle to the arrival angle for a scatterer on an ellipse of
// eccentricity e. Evaluated as
//   phi_R = atan2((1 - e^2) sin phi_T, 2e + (1 + e^2) cos phi_T)
// which equals sgn(phi_T) * arccos[(2e + (1+e^2) cos phi_T) / (1 + e^2 + 2e cos phi_T)]
// but keeps full precision near phi_R = 0 where arccos is ill-conditioned.
inline double aod_to_aoa(double phi_t, double e)
{
    detail::require_angle(phi_t, "Departure angle");
    detail::require_eccentricity(e);
    if (phi_t == pi)
        return pi;
    // 2e + (1 + e^2) cos = (1 + e)^2 - 2 (1 + e^2) sin^2(phi/2); no cancellation near e -> 1
    const double h = std::sin(0.5 * phi_t);
    const double y = (1.0 - e) * (1.0 + e) * std::sin(phi_t);
    const double x = (1.0 + e) * (1.0 + e) - 2.0 * (1.0 + e * e) * h * h;
    return wrap_angle(std::atan2(y, x));
}

// Inverse of aod_to_aoa (same form with e -> -e).
inline double aoa_to_aod(double phi_r, double e)
{
    detail::require_angle(phi_r, "Arrival angle");
    detail::require_eccentricity(e);
    if (phi_r == pi)
        return pi;
    const double h = std::sin(0.5 * phi_r);
    const double y = (1.0 - e) * (1.0 + e) * std::sin(phi_r);
    const double x = (1.0 - e) * (1.0 - e) - 2.0 * (1.0 + e * e) * h * h;
    return wrap_angle(std::atan2(y, x));
}

// |d phi_R / d phi_T| = (1 - e^2) / (1 + e^2 + 2e cos phi_T).
// Smooth on the whole circle: (1-e)/(1+e) at phi_T = 0, (1+e)/(1-e) at +-pi.
inline double aoa_jacobian(double phi_t, double e)
{
    detail::require_angle(phi_t, "Departure angle");
    detail::require_eccentricity(e);
    const double c = std::cos(0.5 * phi_t);
    return (1.0 - e) * (1.0 + e) / ((1.0 - e) * (1.0 - e) + 4.0 * e * c * c);
}

} // namespace aoasim

#endif
