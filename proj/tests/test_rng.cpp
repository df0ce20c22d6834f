#include "doctest.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "ymcyl/rng.hpp"

using namespace ymcyl;

TEST_CASE("philox known-answer vectors") {
  // Random123 KAT for philox4x32_10.
  auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);
  auto ones = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
  }
}

TEST_CASE("uniform and normal moments") {
  CounterRng rng(1, 0);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sn4 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
  }
  CHECK(std::abs(su / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sn / n) < 4 / std::sqrt(double(n)));
  CHECK(std::abs(sn2 / n - 1.0) < 4 * std::sqrt(2.0 / n));
  CHECK(std::abs(sn4 / n - 3.0) < 4 * std::sqrt(96.0 / n));
}

TEST_CASE("chunked reduction does not depend on thread count") {
  auto reduce = [] {
    const std::size_t count = 10007;
    std::vector<double> partial((count + 999) / 1000, 0.0);
    for_each_chunk(count, 1000, [&](std::size_t b, std::size_t e, std::size_t c) {
      for (std::size_t i = b; i < e; ++i) {
        CounterRng rng(5, i);
        partial[c] += rng.normal();
      }
    });
    double total = 0;
    for (double p : partial) total += p;
    return total;
  };
  const double serial = reduce();
  setenv("YMCYL_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  const double threaded = reduce();
  unsetenv("YMCYL_THREADS");
  CHECK(serial == threaded);
}
