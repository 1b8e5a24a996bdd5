// Copyright (c) 2026 the genre-spectrum authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#ifndef GS_RNG_HPP
#define GS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

// Seeded randomness for the whole pipeline. Every stage derives its own
// engine from the root seed and a stage name, so rerunning one stage with
// the same seed reproduces it bit for bit regardless of what ran before.
// Distributions are hand-rolled on top of the raw 64-bit engine output;
// std::* distributions are not portable across standard libraries.

namespace gs::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Engine for a named stage ("split", "init", "mixup", ...) of a run.
inline std::mt19937_64 substream(std::uint64_t root_seed, std::string_view stage) {
  std::uint64_t state = root_seed ^ fnv1a64(stage);
  std::uint64_t lo = splitmix64(state);
  std::uint64_t hi = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
                    static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

/// Standard normal via the polar (Marsaglia) method; second draw discarded.
inline double normal(std::mt19937_64& eng) {
  for (;;) {
    double u = uniform(eng, -1.0, 1.0);
    double v = uniform(eng, -1.0, 1.0);
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 boosted through
/// Gamma(shape + 1) * U^(1/shape).
inline double gamma_draw(std::mt19937_64& eng, double shape) {
  if (shape < 1.0) {
    double u = uniform01(eng);
    while (u <= 0.0) u = uniform01(eng);
    return gamma_draw(eng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(eng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(eng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

/// Beta(a, b) as a ratio of gamma draws.
inline double beta_draw(std::mt19937_64& eng, double a, double b) {
  const double x = gamma_draw(eng, a);
  const double y = gamma_draw(eng, b);
  return (x + y > 0.0) ? x / (x + y) : 0.5;
}

} // namespace gs::rng

#endif // GS_RNG_HPP
