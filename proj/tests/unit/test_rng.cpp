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
#include <doctest.h>

#include <cmath>

#include "mrftest/rng.hpp"

using namespace mrftest;

TEST_CASE("hash64 is deterministic and sensitive to label and index") {
  CHECK(hash64(1, "theta") == hash64(1, "theta"));
  CHECK(hash64(1, "theta") != hash64(2, "theta"));
  CHECK(hash64(1, "theta") != hash64(1, "x"));
  CHECK(hash64(1, "rep", 0) != hash64(1, "rep", 1));
}

TEST_CASE("random streams replay under the same seed") {
  RandomStream a(123), b(123), c(124);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const double ua = a.uniform();
    all_equal &= ua == b.uniform();
    any_diff |= ua != c.uniform();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform stays in [0,1) and normals have sane moments") {
  RandomStream rng(7);
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.03);
}

TEST_CASE("uniform_index covers the range") {
  RandomStream rng(11);
  bool seen[5] = {};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = rng.uniform_index(5);
    REQUIRE(k < 5);
    seen[k] = true;
  }
  for (const bool s : seen) CHECK(s);
}
