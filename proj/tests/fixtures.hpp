#ifndef NILHSP_TESTS_FIXTURES_HPP
#define NILHSP_TESTS_FIXTURES_HPP

// Shared test inputs: the adversarial inner solver and the group catalog.

#include <cmath>
#include <string>
#include <vector>

#include "nilhsp/avgcase.hpp"
#include "nilhsp/catalog.hpp"

namespace fixtures {

/// Exact finder that refuses any group containing the poison vector. On
/// uniform input it succeeds with probability (1 - p^-n)^S.
inline nilhsp::AverageCaseSolver poison_solver(nilhsp::PrimeModulus p, std::size_t n, const nilhsp::ZpVec& poison,
                                               double delta) {
  nilhsp::AverageCaseSolver s = nilhsp::exact_average_solver(p, n);
  s.delta = delta;
  s.inner = [poison](const nilhsp::VecSequence& seq) -> std::optional<nilhsp::ZeroSumCertificate> {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq.at(i) == poison) return std::nullopt;
    }
    return nilhsp::find_zero_sum(seq, nilhsp::Execution::serial);
  };
  return s;
}

/// Success frequency of the inner solver on uniformly random inputs.
inline double estimate_delta(const nilhsp::AverageCaseSolver& s, nilhsp::PrimeModulus p, std::size_t n,
                             std::size_t trials, std::uint64_t seed) {
  nilhsp::RandomSource rng(seed);
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) ok += s.inner(rng.sequence(p, n, s.length)).has_value() ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(trials);
}

/// Every catalog group with |G| <= 64, by CLI name.
inline std::vector<std::string> small_catalog() {
  return {"abelian:2,2,2,2", "abelian:4,2", "d8", "q8", "heisenberg:3", "ut4:2", "d16", "abelian:3,3", "abelian:2^3,2"};
}

}  // namespace fixtures

#endif
