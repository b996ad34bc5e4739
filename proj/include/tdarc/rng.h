#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tdarc {

// "tdarc-rng-v1": mt19937_64 engine seeded through splitmix64 from
// (seed, stream). Conversions to reals and bounded integers are done here
// rather than with <random> distributions, whose output is
// implementation-defined, so streams are identical across standard libraries.
class rng {
public:
  static constexpr std::uint32_t kVersion = 1;

  explicit rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // uniform in [0, n), n > 0
  std::uint64_t below(std::uint64_t n);
  int below(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  double normal(double mean, double stddev);

  // normal(mean, stddev) restricted to [lo, hi] by rejection
  double truncated_normal(double mean, double stddev, double lo, double hi);

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (auto i = v.size(); i > 1; --i) {
      auto const j = below(static_cast<std::uint64_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tdarc
