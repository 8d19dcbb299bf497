#pragma once

#include <cstdint>
#include <random>

namespace satlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `master`. Independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// mt19937_64 plus distribution code written out here, because the standard
/// distributions are implementation-defined and would break byte-identical
/// output across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);
  /// 1 with probability p. p <= 0 never fires, p >= 1 always does.
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace satlab
