#ifndef NILHSP_AVGCASE_HPP
#define NILHSP_AVGCASE_HPP

// Worst-case to average-case boosting: a solver that works on uniformly random
// sequences is run on randomly masked groups of an arbitrary input.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "nilhsp/execution.hpp"
#include "nilhsp/random_source.hpp"
#include "nilhsp/zerosum.hpp"

namespace nilhsp {

using InnerSolver = std::function<std::optional<ZeroSumCertificate>(const VecSequence&)>;

struct AverageCaseSolver {
  InnerSolver inner;
  /// Vectors consumed per call (S).
  std::size_t length = 0;
  /// Claimed success probability on uniform input, 0 < delta <= 1.
  double delta = 1.0;
};

struct BoostOutcome {
  std::optional<ZeroSumCertificate> certificate;
  /// One flag per group of S masked vectors.
  std::vector<bool> group_success;
  std::size_t lucky = 0;
  bool outer_success = false;
};

/// ceil(1/delta) * S^2.
std::size_t boost_input_length(const AverageCaseSolver& solver);

/// Deterministic finder wrapped as an inner solver with delta = 1.
AverageCaseSolver exact_average_solver(PrimeModulus p, std::size_t n);

/// Masks are drawn sequentially from rng before any group is solved, so the
/// outcome does not depend on exec.
BoostOutcome boost(const AverageCaseSolver& solver, const VecSequence& seq, RandomSource& rng,
                   Execution exec = Execution::parallel);

}  // namespace nilhsp

#endif
