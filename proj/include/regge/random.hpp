// Copyright 2026 The regge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REGGE_RANDOM_HPP_
#define REGGE_RANDOM_HPP_

#include <cstdint>

namespace regge
{

/// SplitMix64 (Steele, Lea, Flood 2014). The whole sequence is specified by:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// and uniform() = (next() >> 11) * 2^-53, so any implementation seeded with
/// the same 64-bit value draws the same doubles.
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next()
  {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

/// Seed of the k-th independent stream derived from a base seed.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k)
{
  SplitMix64 mix(base ^ (0xD1B54A32D192ED03ULL * (k + 1)));
  return mix.next();
}

}  // namespace regge

#endif  // REGGE_RANDOM_HPP_
