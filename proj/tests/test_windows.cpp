// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lowlat/core.hpp"
#include "lowlat/windows.hpp"

using namespace lowlat;

TEST_CASE("sqrt_hann closed-form values") {
  const auto w = sqrt_hann(4);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w[3] == doctest::Approx(0.70710678).epsilon(1e-8));
}

TEST_CASE("sqrt_hann degenerate length") {
  const auto w = sqrt_hann(2);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(1.0));
}

TEST_CASE("sqrt_hann rejects odd and tiny lengths") {
  CHECK_THROWS_AS(sqrt_hann(3), Error);
  CHECK_THROWS_AS(sqrt_hann(0), Error);
  CHECK_THROWS_AS(sqrt_hann(-8), Error);
}

TEST_CASE("sqrt_hann squares satisfy the half-overlap identity") {
  for (int len : {4, 16, 48, 160, 320, 642}) {
    const auto w = sqrt_hann(len);
    for (int n = 0; n < len / 2; ++n) {
      const double sum = w[std::size_t(n)] * w[std::size_t(n)] +
                         w[std::size_t(n + len / 2)] * w[std::size_t(n + len / 2)];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("asym_pair with equal lengths reassembles the full Hann") {
  for (int len : {8, 80, 320}) {
    const WindowPair pair = asym_pair(len, len);
    const auto hann = periodic_hann(len);
    REQUIRE(pair.analysis.size() == hann.size());
    for (std::size_t n = 0; n < hann.size(); ++n)
      CHECK(pair.analysis[n] == doctest::Approx(hann[n]).epsilon(1e-12));
  }
}

TEST_CASE("asym_pair shape: rising then falling around the junction peak") {
  const WindowPair pair = asym_pair(320, 80);
  CHECK(pair.hop == 40);
  CHECK(pair.analysis.size() == 320);
  CHECK(pair.synthesis.size() == 80);
  CHECK(pair.analysis[280] == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 0; n + 1 < 280; ++n)
    CHECK(pair.analysis[std::size_t(n)] <= pair.analysis[std::size_t(n + 1)] + 1e-15);
  for (int n = 280; n + 1 < 320; ++n)
    CHECK(pair.analysis[std::size_t(n)] >= pair.analysis[std::size_t(n + 1)] - 1e-15);
}

TEST_CASE("asym_pair rejects bad geometry") {
  CHECK_THROWS_AS(asym_pair(80, 320), Error);
  CHECK_THROWS_AS(asym_pair(321, 80), Error);
  CHECK_THROWS_AS(asym_pair(320, 0), Error);
}

TEST_CASE("overlap product pattern is unity for sqrt-Hann pairs") {
  for (int len : {320, 160, 80, 48}) {  // the shipped 20/10/5/3 ms windows
    const auto pattern = overlap_product_pattern(sym_pair(len));
    for (double v : pattern) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pr_normalize is a no-op for sqrt-Hann pairs") {
  const WindowPair pair = sym_pair(320);
  const WindowPair normalized = pr_normalize(pair);
  CHECK(normalized.normalized);
  for (std::size_t n = 0; n < pair.synthesis.size(); ++n)
    CHECK(normalized.synthesis[n] ==
          doctest::Approx(pair.synthesis[n]).epsilon(1e-9));
}

TEST_CASE("pr_normalize makes asymmetric pairs reconstruct") {
  for (auto [la, ls] : {std::pair{320, 80}, {320, 160}, {320, 48}}) {
    const WindowPair normalized = pr_normalize(asym_pair(la, ls));
    CHECK(pr_error(normalized) <= 1e-6);
  }
}

TEST_CASE("normalized sqrt-Hann pairs reconstruct") {
  CHECK(pr_error(pr_normalize(sym_pair(320))) <= 1e-6);
  CHECK(pr_error(pr_normalize(sym_pair(160))) <= 1e-6);
}

TEST_CASE("pr_normalize is idempotent") {
  const WindowPair once = pr_normalize(asym_pair(320, 80));
  const WindowPair twice = pr_normalize(once);
  for (std::size_t n = 0; n < once.synthesis.size(); ++n)
    CHECK(twice.synthesis[n] == doctest::Approx(once.synthesis[n]).epsilon(1e-12));
}

TEST_CASE("pr_normalize divides by the tail product for rectangular pairs") {
  WindowPair pair;
  pair.analysis.assign(16, 0.5);
  pair.synthesis.assign(8, 1.0);
  pair.hop = 8;  // single-frame coverage
  const WindowPair normalized = pr_normalize(pair);
  for (double v : normalized.synthesis)
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pr_error(normalized) <= 1e-9);
}

TEST_CASE("pr_normalize fails on non-covering windows") {
  WindowPair pair;
  pair.analysis.assign(16, 1.0);
  pair.synthesis.assign(8, 0.0);
  pair.hop = 4;
  CHECK_THROWS_AS(pr_normalize(pair), Error);
}

TEST_CASE("doubling the synthesis window doubles the reconstruction") {
  WindowPair pair = pr_normalize(sym_pair(320));
  for (double& v : pair.synthesis) v *= 2.0;
  CHECK(pr_error(pair) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("normalized equal-length asym pair matches the sqrt-Hann error bound") {
  const WindowPair asym = pr_normalize(asym_pair(160, 160));
  CHECK(pr_error(asym) <= 1e-6);
  // Same bound, different shapes: full Hann analysis vs sqrt-Hann.
  const auto sqrt_win = sqrt_hann(160);
  CHECK(std::abs(asym.analysis[40] - sqrt_win[40]) > 1e-3);
}

TEST_CASE("window CSV export is one weight per line, 9 significant digits") {
  const auto w = sqrt_hann(16);
  std::ostringstream out;
  write_window_csv(out, w);

  std::istringstream in(out.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    REQUIRE(!line.empty());
    const double parsed = std::stod(line);
    CHECK(parsed == doctest::Approx(w[count]).epsilon(1e-8));
    ++count;
  }
  CHECK(count == w.size());
  // 9 significant digits survive for an irrational weight.
  char expect[32];
  std::snprintf(expect, sizeof(expect), "%.9g", w[1]);
  CHECK(out.str().find(expect) != std::string::npos);
}
