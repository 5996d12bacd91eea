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

#ifndef AOASIM_RNG_HPP
#define AOASIM_RNG_HPP

#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>

namespace aoasim
{

using Engine = std::mt19937_64;

// SplitMix64 finalizer
inline constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of an independent per-trial stream. Depends only on (master_seed, trial_index),
// so trials can run in any order or in parallel.
inline constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index)
{
    return mix64(mix64(master_seed + 0x9e3779b97f4a7c15ULL) ^ (trial_index * 0xd1b54a32d192ed03ULL + 1));
}

inline Engine make_trial_engine(std::uint64_t master_seed, std::uint64_t trial_index)
{
    return Engine(trial_seed(master_seed, trial_index));
}

// Uniform double in [0, 1) with 53 random bits
template <class URBG>
double uniform01(URBG &g)
{
    static_assert(URBG::max() - URBG::min() >= 0xffffffffffffffffULL, "uniform01 needs a 64-bit generator");
    return static_cast<double>((g() - URBG::min()) >> 11) * 0x1.0p-53;
}

// FNV-1a, used for scenario digests
class Fnv1a
{
  public:
    void add_bytes(const void *data, std::size_t n)
    {
        const auto *p = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < n; ++i)
        {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void add(double v) { add_bytes(&v, sizeof v); }
    void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
    void add(std::string_view s) { add_bytes(s.data(), s.size()); }
    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace aoasim

#endif
