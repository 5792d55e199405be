#pragma once

#include <cstdint>
#include <random>

namespace kcenter {

// Seeded generator with distribution helpers implemented on raw mt19937_64
// output. std::uniform_real_distribution is not pinned across standard
// library versions; deriving values from the raw bit stream keeps generated
// instances and partitions reproducible from a seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform index in [0, n). Modulo bias is irrelevant at the sizes used here.
  std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kcenter
