#include "nilhsp/avgcase.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nilhsp/errors.hpp"

namespace nilhsp {

std::size_t boost_input_length(const AverageCaseSolver& solver) {
  if (!(solver.delta > 0.0) || solver.delta > 1.0) throw std::invalid_argument("delta must lie in (0, 1]");
  if (solver.length == 0) throw std::invalid_argument("inner length must be positive");
  // Tolerance keeps 1/delta for delta = 1/k from rounding up to k+1.
  const auto groups = static_cast<std::size_t>(std::ceil(1.0 / solver.delta - 1e-9));
  const std::size_t s = solver.length;
  if (s > std::numeric_limits<std::uint32_t>::max() / s / groups) throw BudgetExceeded("boost input too long");
  return groups * s * s;
}

AverageCaseSolver exact_average_solver(PrimeModulus p, std::size_t n) {
  const WideCount len = required_length(p, n);
  if (len > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("inner length exceeds 2^32");
  AverageCaseSolver s;
  s.length = static_cast<std::size_t>(len);
  s.delta = 1.0;
  s.inner = [](const VecSequence& seq) -> std::optional<ZeroSumCertificate> {
    return find_zero_sum(seq, Execution::serial);
  };
  return s;
}

namespace {

std::optional<ZeroSumCertificate> checked_call(const InnerSolver& inner, const VecSequence& seq) {
  std::optional<ZeroSumCertificate> out;
  try {
    out = inner(seq);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (out && !verify_certificate(seq, *out)) return std::nullopt;
  return out;
}

}  // namespace

BoostOutcome boost(const AverageCaseSolver& solver, const VecSequence& seq, RandomSource& rng, Execution exec) {
  const std::size_t need = boost_input_length(solver);
  if (seq.size() != need) {
    throw std::invalid_argument("boost needs exactly " + std::to_string(need) + " vectors, got " +
                                std::to_string(seq.size()));
  }
  const PrimeModulus p = seq.modulus();
  const std::size_t n = seq.dim();
  const std::size_t s = solver.length;

  VecSequence masks(p, n);
  masks.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) masks.push_back(rng.vector(p, n));
  std::vector<Residue> flat(seq.data().begin(), seq.data().end());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = p.add(flat[i], masks.data()[i]);
  const VecSequence masked(p, n, std::move(flat));

  const std::size_t groups = seq.size() / s;
  std::vector<std::optional<ZeroSumCertificate>> found(groups);
  detail::for_each_index(groups, exec, [&](std::size_t g) { found[g] = checked_call(solver.inner, masked.slice(g * s, s)); });

  BoostOutcome outcome;
  outcome.group_success.resize(groups);
  std::vector<std::size_t> lucky;
  for (std::size_t g = 0; g < groups; ++g) {
    outcome.group_success[g] = found[g].has_value();
    if (found[g]) lucky.push_back(g);
  }
  outcome.lucky = lucky.size();
  if (lucky.size() < s) return outcome;
  lucky.resize(s);

  // u_k is minus the sum of the original vectors under group k's certificate.
  VecSequence sums(p, n);
  sums.reserve(s);
  for (std::size_t g : lucky) {
    std::vector<Residue> acc(n, 0);
    for (Index i : found[g]->indices()) {
      auto r = masks.row(g * s + i);
      for (std::size_t c = 0; c < n; ++c) acc[c] = p.add(acc[c], r[c]);
    }
    sums.push_back(acc);
  }
  const auto outer = checked_call(solver.inner, sums);
  if (!outer) return outcome;
  outcome.outer_success = true;

  std::vector<Index> indices;
  for (Index k : outer->indices()) {
    const std::size_t g = lucky[k];
    for (Index i : found[g]->indices()) indices.push_back(static_cast<Index>(g * s + i));
  }
  ZeroSumCertificate cert(std::move(indices));
  if (!verify_certificate(seq, cert)) throw VerificationFailure("boosted certificate does not sum to zero");
  outcome.certificate = std::move(cert);
  return outcome;
}

}  // namespace nilhsp
