/**
 * Copyright 2026 The mpemb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MPEMB_RANDOM_H_
#define MPEMB_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace mpemb {

using Rng = std::mt19937_64;

/// splitmix64 finalizer. Used to derive independent stream seeds from the
/// global seed so results do not depend on how work is split across workers.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = MixSeed(seed);
  for (std::uint64_t p : parts) h = MixSeed(h ^ MixSeed(p));
  return h;
}

/// Uniform double in [0, 1) built from the top 53 bits, so values are
/// identical on every platform for a given engine state.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), modulo with rejection of the biased tail.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % n;
}

/// Fisher-Yates shuffle driven by UniformIndex; std::shuffle is not
/// specified bit-exactly across standard libraries.
template <typename It>
void Shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    std::uint64_t j = UniformIndex(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace mpemb

#endif  // MPEMB_RANDOM_H_
