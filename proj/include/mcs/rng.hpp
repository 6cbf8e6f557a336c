#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mcs {

// splitmix64: tiny, fast, and identical on every platform. The stdlib
// distributions are avoided on purpose; their outputs differ across standard
// library implementations and would break byte-identical reruns.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  long long uniform_int(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("empty integer range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(next());  // full 64-bit range
    const std::uint64_t limit = ~0ULL - ~0ULL % span;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<long long>(x % span);
  }

  double exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("rate must be positive");
    return -std::log(1.0 - uniform01()) / rate;
  }

 private:
  std::uint64_t state_;
};

// Stable sub-seed for (master, index) pairs, so replications stay independent
// of worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  Rng mix(master ^ (0x9e3779b97f4a7c15ULL * (index + 0x632be59bd9b4e019ULL)));
  mix.next();
  return mix.next();
}

}  // namespace mcs
