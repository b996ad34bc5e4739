#include "tdarc/rng.h"

#include <cmath>

namespace tdarc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

rng::rng(std::uint64_t seed, std::uint64_t stream)
    : engine_{splitmix64(splitmix64(seed ^ (std::uint64_t{kVersion} << 56)) ^
                         splitmix64(stream + 0x632be59bd9b4e019ULL))} {}

std::uint64_t rng::below(std::uint64_t n) {
  // rejection on the top of the range keeps the result unbiased
  auto const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

double rng::normal(double mean, double stddev) {
  // Box-Muller, one variate per call
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  auto const u2 = uniform01();
  auto const z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + stddev * z;
}

double rng::truncated_normal(double mean, double stddev, double lo, double hi) {
  if (stddev <= 0.0) {
    return mean;
  }
  while (true) {
    auto const x = normal(mean, stddev);
    if (x >= lo && x <= hi) {
      return x;
    }
  }
}

}  // namespace tdarc
