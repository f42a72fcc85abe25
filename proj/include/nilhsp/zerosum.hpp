#ifndef NILHSP_ZEROSUM_HPP
#define NILHSP_ZEROSUM_HPP

// Deterministic zero-sum subsequence machinery over Z_p^n.
//
// The pipeline for odd p is
//   linear_relation -> to_standard            (coefficient bound (p-1)/2)
//   -> halve, applied floor(log2((p-1)/2)) times (bound 1: a signed zero sum)
//   -> double_collisions                        (an unsigned zero sum)
// and for p = 2 a single GF(2) elimination suffices.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilhsp/execution.hpp"
#include "nilhsp/zpvec.hpp"

namespace nilhsp {

using Index = std::uint32_t;
using WideCount = unsigned __int128;

std::string to_decimal(WideCount value);

// ---------------------------------------------------------------------------
// Length schedule

/// d_0 = (p-1)/2, d_{i+1} = floor(d_i / 2) down to d_k = 1, and the matching
/// length functions h_0(n) = n+1, h_{i+1}(n) = h_i(n) * h_i(ceil(d_i/2) * n).
class LengthSchedule {
 public:
  /// Requires an odd prime.
  explicit LengthSchedule(PrimeModulus p);

  PrimeModulus modulus() const noexcept { return p_; }
  /// k = floor(log2 d_0).
  std::size_t levels() const noexcept { return d_.size() - 1; }
  std::span<const std::uint32_t> bounds() const noexcept { return d_; }
  /// h_i(n); throws std::overflow_error past 128 bits.
  WideCount h(std::size_t i, std::uint64_t n) const;
  /// Right-hand side of the closed-form bound
  /// h_i(n) <= (prod_{j<i} ceil(d_j/2))^(2^(i-1)) * (n+1)^(2^i).
  WideCount bound_rhs(std::size_t i, std::uint64_t n) const;

 private:
  PrimeModulus p_;
  std::vector<std::uint32_t> d_;
};

/// ceil(log2 p).
unsigned collision_levels(PrimeModulus p);
/// Number of vectors find_signed_zero consumes: h_k(n); n+1 for p = 2.
WideCount required_signed_length(PrimeModulus p, std::uint64_t n);
/// Number of vectors find_zero_sum consumes: n+1 for p = 2, otherwise
/// required_signed_length(p, n)^ceil(log2 p).
WideCount required_length(PrimeModulus p, std::uint64_t n);
/// Olson's value 1 + n(p-1) of the Davenport constant of Z_p^n.
std::uint64_t davenport_constant(PrimeModulus p, std::uint64_t n);

// ---------------------------------------------------------------------------
// Signed subsets and relations

struct SignedEntry {
  Index index;
  std::int8_t sign;  // +1 or -1
  friend bool operator==(const SignedEntry&, const SignedEntry&) = default;
};

/// A map index -> {+1, -1}; absent indices carry 0. Entries are kept in
/// ascending index order.
class SignedSubset {
 public:
  SignedSubset() = default;
  explicit SignedSubset(std::vector<SignedEntry> entries);

  std::span<const SignedEntry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  int sign_of(Index index) const;
  bool disjoint_from(const SignedSubset& other) const;

  friend bool operator==(const SignedSubset&, const SignedSubset&) = default;

 private:
  std::vector<SignedEntry> entries_;
};

/// Sum of sign(j) * v_j over the support.
ZpVec signed_sum(const VecSequence& seq, const SignedSubset& subset);

/// A signed subset together with its value. The value is always recomputed
/// from the sequence; the claimed-value constructor throws VerificationFailure
/// on disagreement.
class SignedSubsetSum {
 public:
  SignedSubsetSum(const VecSequence& seq, SignedSubset subset);
  SignedSubsetSum(const VecSequence& seq, SignedSubset subset, const ZpVec& claimed);

  const SignedSubset& subset() const noexcept { return subset_; }
  const ZpVec& value() const noexcept { return value_; }

 private:
  SignedSubset subset_;
  ZpVec value_;
};

/// sum_{c=1..d} c * part(c) = 0 with pairwise disjoint parts, not all empty.
class StandardRelation {
 public:
  StandardRelation(const VecSequence& seq, std::vector<SignedSubsetSum> parts);

  std::size_t bound() const noexcept { return parts_.size(); }
  std::span<const SignedSubsetSum> parts() const noexcept { return parts_; }
  /// Part carrying coefficient c, 1 <= c <= bound().
  const SignedSubsetSum& part(std::size_t coefficient) const { return parts_.at(coefficient - 1); }

 private:
  std::vector<SignedSubsetSum> parts_;
};

/// Non-empty strictly increasing index list; the verifier checks the sum.
class ZeroSumCertificate {
 public:
  explicit ZeroSumCertificate(std::vector<Index> indices);

  std::span<const Index> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }

  friend bool operator==(const ZeroSumCertificate&, const ZeroSumCertificate&) = default;

 private:
  std::vector<Index> indices_;
};

/// Independent checks used on every algorithm output.
bool verify_certificate(const VecSequence& seq, const ZeroSumCertificate& cert);
bool verify_signed_zero(const VecSequence& seq, const SignedSubset& subset);
/// Recomputed sum of the certificate's vectors.
ZpVec certificate_sum(const VecSequence& seq, const ZeroSumCertificate& cert);

// ---------------------------------------------------------------------------
// Operations

struct RelationTerm {
  Index index;
  Residue coefficient;  // nonzero
  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};
using LinearRelation = std::vector<RelationTerm>;

/// Nontrivial relation among the first n+1 vectors, found by elimination with
/// first-nonzero pivoting and stopping at the first dependent vector. Scaled
/// so that the lowest-index coefficient is 1.
LinearRelation linear_relation(const VecSequence& seq);

/// Splits a relation by coefficient class: c <= (p-1)/2 keeps sign +1 under c,
/// c > (p-1)/2 gets sign -1 under p-c. Odd p only.
StandardRelation to_standard(const LinearRelation& relation, const VecSequence& seq);

/// A procedure producing standard relations of a fixed bound from exactly
/// length(dim) vectors of dimension dim.
struct StandardSolver {
  std::uint32_t bound = 0;
  std::function<WideCount(std::uint64_t dim)> length;
  std::function<StandardRelation(const VecSequence&)> solve;
};

enum class HalveBranch {
  inner_zero_part,  // an inner relation already had a zero-valued part
  combined,         // the combined row/column relation was non-empty
  diagonal_part,    // some w_ii with i > d/2 was itself a zero sum
  lower_block,      // only the i, j <= d/2 block was populated
};

struct HalveOptions {
  /// Return immediately when an inner relation has a non-empty zero-valued part.
  bool inner_zero_shortcut = true;
  Execution exec = Execution::parallel;
};

struct HalveResult {
  StandardRelation relation;
  HalveBranch branch;
};

/// One halving step: from exactly inner.length(n) * inner.length(ceil(d/2) n)
/// vectors builds a standard relation with bound floor(d/2), d = inner.bound >= 2.
HalveResult halve(const StandardSolver& inner, const VecSequence& seq, const HalveOptions& options = {});

/// Base solver (elimination + to_standard), bound (p-1)/2.
StandardSolver base_solver(PrimeModulus p);
/// Wraps a solver of bound d into one of bound floor(d/2).
StandardSolver halving_solver(StandardSolver inner, HalveOptions options = {});
/// The bound-1 solver after all halving levels.
StandardSolver signed_solver(PrimeModulus p, Execution exec = Execution::parallel);

/// Non-empty signed subset of the first required_signed_length(p, n) vectors
/// summing to zero. Odd p only.
SignedSubset find_signed_zero(const VecSequence& seq, Execution exec = Execution::parallel);

/// Collision doubling over ceil(log2 p) levels; consumes the first
/// required_length(p, n) vectors. Odd p only.
ZeroSumCertificate double_collisions(const VecSequence& seq, Execution exec = Execution::parallel);

/// Top-level finder: zero-vector early exit, GF(2) elimination for p = 2,
/// collision doubling otherwise.
ZeroSumCertificate find_zero_sum(const VecSequence& seq, Execution exec = Execution::parallel);

/// Lexicographically least minimal-cardinality zero-sum subset, or nullopt.
/// Sequences longer than 24 throw BudgetExceeded.
std::optional<ZeroSumCertificate> brute_force_zero_sum(const VecSequence& seq,
                                                       std::optional<std::size_t> max_size = std::nullopt);

}  // namespace nilhsp

#endif
