#include <doctest.h>

#include <vector>

#include "orbitlab/rng.hpp"
#include "oracles.hpp"

using orbitlab::SplitRng;

TEST_CASE("same seed reproduces the stream") {
  SplitRng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("substreams are independent of parent draw position") {
  SplitRng parent(7);
  SplitRng child_before = parent.split(3);
  for (int i = 0; i < 17; ++i) parent.next_u64();
  SplitRng child_after = parent.split(3);
  for (int i = 0; i < 20; ++i) {
    CHECK(child_before.next_u64() == child_after.next_u64());
  }
}

TEST_CASE("distinct streams differ") {
  SplitRng root(9);
  SplitRng a = root.split(0);
  SplitRng b = root.split(1);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("uniform lies in [0,1)") {
  SplitRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian draws pass a KS test") {
  SplitRng rng(123);
  std::vector<double> samples(10000);
  for (auto& s : samples) s = rng.gaussian();
  CHECK(oracle::ks_p_value(samples) > 0.01);
}
