#pragma once

#include <cstdint>
#include <random>

#include "lapeig/types.hpp"

namespace lapeig {

// Seedable generator with the same output on every platform:
// std::mt19937_64 plus a 53-bit mantissa mapping to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  // Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  Vector vector(Index n) {
    Vector v(n);
    for (auto& x : v) x = symmetric();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lapeig
