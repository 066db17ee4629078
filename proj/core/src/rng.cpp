#include "orbitlab/rng.hpp"

#include <cmath>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless mix of key and counter; two rounds keep neighbouring counters
// statistically independent.
std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
  return splitmix64(splitmix64(key ^ 0x6a09e667f3bcc909ULL) + counter);
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x243f6a8885a308d3ULL))) {}

SplitRng SplitRng::split(std::uint64_t stream) const {
  SplitRng child(0);
  child.key_ = splitmix64(key_ ^ splitmix64(stream + 0x452821e638d01377ULL));
  child.counter_ = 0;
  child.have_cached_ = false;
  return child;
}

std::uint64_t SplitRng::next_u64() { return mix(key_, counter_++); }

double SplitRng::uniform() {
  // 53 random bits -> double in [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double SplitRng::gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  cached_ = radius * std::sin(kTwoPi * u2);
  have_cached_ = true;
  return radius * std::cos(kTwoPi * u2);
}

int SplitRng::uniform_int(int n) {
  if (n <= 0) throw BadArgument("uniform_int requires n > 0");
  // Rejection-free modulo is fine here: n is tiny relative to 2^64.
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

}  // namespace orbitlab
