#pragma once

#include <cstdint>

namespace orbitlab {

// Counter-based splittable generator. A draw is a pure function of
// (key, counter), so split(i) yields an independent stream whose output does
// not depend on how many draws the parent or sibling streams have made.
// Parallel code hands substream i to worker i and reproduces the sequential
// results exactly.
class SplitRng {
public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Derive an independent substream; deterministic in (parent key, stream).
  SplitRng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();                   // standard normal, Box-Muller
  int uniform_int(int n);              // {0, ..., n-1}

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace orbitlab
