#include "nilhsp/random_source.hpp"

#include <limits>
#include <stdexcept>

namespace nilhsp {

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

ZpVec RandomSource::vector(PrimeModulus p, std::size_t n) {
  std::vector<Residue> coords(n);
  for (auto& c : coords) c = residue(p);
  return ZpVec(p, std::move(coords));
}

VecSequence RandomSource::sequence(PrimeModulus p, std::size_t n, std::size_t count) {
  // Same draws as residue(p) per coordinate, with the rejection limit hoisted.
  const std::uint64_t bound = p.value();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::vector<Residue> flat(count * n);
  for (auto& c : flat) {
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    c = static_cast<Residue>(x % bound);
  }
  return VecSequence(p, n, std::move(flat));
}

}  // namespace nilhsp
