/* Copyright (C) 2026 the mrftest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef MRFTEST_RNG_HPP
#define MRFTEST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace mrftest {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Splittable counter-based seed derivation. All randomness in the toolkit
/// flows from one root seed through this function:
///
///   child_seed = splitmix64(splitmix64(parent ^ fnv1a64(label)) ^ index)
///
/// so any (label, index) pair names an independent stream reproducibly.
inline std::uint64_t hash64(std::uint64_t parent_seed, std::string_view label,
                            std::uint64_t index = 0) {
  return detail::splitmix64(
      detail::splitmix64(parent_seed ^ detail::fnv1a64(label)) ^ index);
}

/// Deterministic random stream. Raw 64-bit words come from std::mt19937_64
/// (whose output sequence is pinned by the standard); uniforms and normals
/// are built from those words explicitly so results are identical across
/// standard-library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  /// Uniform index in [0, n). Bias is O(n / 2^53), negligible here.
  std::size_t uniform_index(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  /// Binomial draw as a sum of Bernoulli trials (n stays small here).
  std::size_t binomial(std::size_t n, double p) {
    std::size_t k = 0;
    for (std::size_t t = 0; t < n; ++t) k += bernoulli(p) ? 1u : 0u;
    return k;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mrftest

#endif  // MRFTEST_RNG_HPP
