#include <stdexcept>

#include "doctest.h"
#include "nbvb/math.hpp"

using namespace nbvb;

TEST_SUITE("math") {
  TEST_CASE("binom_u64 exact values") {
    CHECK(binom_u64(0, 0) == 1);
    CHECK(binom_u64(5, 0) == 1);
    CHECK(binom_u64(5, 5) == 1);
    CHECK(binom_u64(5, 2) == 10);
    CHECK(binom_u64(10, 3) == 120);
    CHECK(binom_u64(64, 32) == 1832624140942590534ULL);  // largest table entry
    CHECK(binom_u64(64, 1) == 64);
  }

  TEST_CASE("binom_u64 edges") {
    CHECK(binom_u64(5, -1) == 0);
    CHECK(binom_u64(5, 6) == 0);
    CHECK_THROWS_AS(binom_u64(65, 2), std::out_of_range);
    CHECK_THROWS_AS(binom_u64(-1, 0), std::out_of_range);
  }

  TEST_CASE("floating binom agrees with the exact table") {
    for (int n = 0; n <= 20; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(binom(n, k) == doctest::Approx(static_cast<double>(binom_u64(n, k))).epsilon(1e-12));
  }

  TEST_CASE("ipow") {
    CHECK(ipow(2.0, 10) == doctest::Approx(1024.0));
    CHECK(ipow(0.5, 3) == doctest::Approx(0.125));
    CHECK(ipow(3.7, 0) == 1.0);
    CHECK(ipow(0.0, 5) == 0.0);
  }

  TEST_CASE("binom_pmf normalizes and hits degenerate endpoints") {
    for (const double p : {0.0, 0.2, 0.5, 0.93, 1.0}) {
      const auto pmf = binom_pmf(8, p);
      REQUIRE(pmf.size() == 9);
      double s = 0.0;
      for (double x : pmf) {
        CHECK(x >= 0.0);
        s += x;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(binom_pmf(6, 0.0)[0] == 1.0);
    CHECK(binom_pmf(6, 1.0)[6] == 1.0);
    // one exact interior value: C(4,2) * 0.25^2 * 0.75^2
    CHECK(binom_pmf(4, 0.25)[2] == doctest::Approx(6 * 0.0625 * 0.5625).epsilon(1e-14));
  }

  TEST_CASE("binom_pmf rejects bad input") {
    CHECK_THROWS_AS(binom_pmf(5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(binom_pmf(5, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(binom_pmf(-1, 0.5), std::out_of_range);
    CHECK_THROWS_AS(binom_pmf(65, 0.5), std::out_of_range);
  }
}
