#ifndef NILHSP_RANDOM_SOURCE_HPP
#define NILHSP_RANDOM_SOURCE_HPP

#include <cstdint>
#include <random>

#include "nilhsp/zpvec.hpp"

namespace nilhsp {

/// Seeded generator shared by every randomized tool. Draws are produced by
/// rejection sampling on raw mt19937_64 output, so a seed reproduces the same
/// vectors on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  Residue residue(PrimeModulus p) { return static_cast<Residue>(below(p.value())); }
  ZpVec vector(PrimeModulus p, std::size_t n);
  VecSequence sequence(PrimeModulus p, std::size_t n, std::size_t count);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace nilhsp

#endif
