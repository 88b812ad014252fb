#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "stylerl/rng.hpp"

using namespace stylerl;

TEST_CASE("identical stream keys replay identical draws") {
  Rng a = derive_stream(42, "rollout", 7, 3);
  Rng b = derive_stream(42, "rollout", 7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct tags or indices give distinct streams") {
  Rng a = derive_stream(42, "rollout", 7, 3);
  Rng b = derive_stream(42, "rollout", 7, 4);
  Rng c = derive_stream(42, "shuffle", 7, 3);
  int diff_b = 0;
  int diff_c = 0;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u64();
    diff_b += x != b.next_u64();
    diff_c += x != c.next_u64();
  }
  CHECK(diff_b > 12);
  CHECK(diff_c > 12);
}

TEST_CASE("next_double stays in the half-open unit interval") {
  Rng rng(123);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("next_below covers the full range roughly uniformly") {
  Rng rng(5);
  std::array<int, 6> counts{};
  for (int i = 0; i < 60000; ++i) ++counts[rng.next_below(6)];
  for (int c : counts) {
    CHECK(c > 9500);
    CHECK(c < 10500);
  }
}

TEST_CASE("categorical respects weights") {
  Rng rng(9);
  const std::vector<double> w = {0.1, 0.0, 0.9};
  std::array<int, 3> counts{};
  for (int i = 0; i < 20000; ++i) ++counts[static_cast<std::size_t>(rng.categorical(w))];
  CHECK(counts[1] == 0);
  CHECK(counts[0] > 1600);
  CHECK(counts[0] < 2400);
  CHECK(counts[2] > 17500);
}

TEST_CASE("categorical rejects degenerate weight vectors") {
  Rng rng(1);
  CHECK_THROWS(rng.categorical(std::vector<double>{0.0, 0.0}));
  CHECK_THROWS(rng.categorical(std::vector<double>{0.5, -0.1}));
}

TEST_CASE("shuffle is a deterministic permutation") {
  std::vector<int> v1 = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> v2 = v1;
  Rng a = derive_stream(3, "shuffle", 0);
  Rng b = derive_stream(3, "shuffle", 0);
  a.shuffle(v1);
  b.shuffle(v2);
  CHECK(v1 == v2);
  std::vector<int> sorted = v1;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}
