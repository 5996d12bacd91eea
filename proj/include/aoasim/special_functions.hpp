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

#ifndef AOASIM_SPECIAL_FUNCTIONS_HPP
#define AOASIM_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <stdexcept>

namespace aoasim
{

// Exponentially scaled modified Bessel function I0(x) * exp(-x), x >= 0.
// Large arguments use the Hankel asymptotic expansion, which stays finite
// where I0 itself would overflow.
inline double bessel_i0_scaled(double x)
{
    if (!(x >= 0.0))
        throw std::invalid_argument("bessel_i0_scaled: argument must be >= 0.");
    if (x <= 500.0)
        return std::cyl_bessel_i(0.0, x) * std::exp(-x);

    // I0(x) e^-x ~ 1/sqrt(2 pi x) * sum_k [(2k-1)!!]^2 / (k! (8x)^k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k)
    {
        const double m = 2.0 * k - 1.0;
        term *= m * m / (k * 8.0 * x);
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * 3.14159265358979323846 * x);
}

} // namespace aoasim

#endif
