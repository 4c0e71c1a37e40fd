#pragma once

#include <cstdint>
#include <random>

namespace planemap {

// Deterministic draws on top of mt19937_64. The helpers avoid
// std::uniform_int_distribution so streams are identical across standard
// library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n), n > 0.
  long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

  // Uniform in [lo, hi], inclusive.
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }

  // Uniform in [lo, hi] \ {0}.
  long nonzero_range(long lo, long hi) {
    for (;;) {
      long r = range(lo, hi);
      if (r != 0) return r;
    }
  }

  bool coin() { return (next() & 1) != 0; }

private:
  std::mt19937_64 gen_;
};

}  // namespace planemap
