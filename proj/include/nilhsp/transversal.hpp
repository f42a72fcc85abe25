#ifndef NILHSP_TRANSVERSAL_HPP
#define NILHSP_TRANSVERSAL_HPP

// Coset decomposition x = alpha(x) * beta(x) with beta(x) in L, refined from
// a chief series: M_i = K_i L gives G = M_0 > ... > M_s = L with prime
// indices, and alpha(x) = a_1^g_1 ... a_s^g_s is read off by iterated
// discrete logarithms (exhaustive search over each prime).

#include <cstdint>
#include <vector>

#include "nilhsp/group.hpp"

namespace nilhsp {

class CosetTransversal {
 public:
  /// G must be nilpotent (a chief series is computed).
  explicit CosetTransversal(const Subgroup& l);

  const Subgroup& subgroup() const noexcept { return l_; }
  const Group& group() const noexcept { return l_.group(); }
  /// Chain elements a_i and primes p_i.
  const std::vector<Elem>& steps() const noexcept { return steps_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
  /// Exponents g_i with alpha(x) = a_1^g_1 ... a_s^g_s.
  std::vector<std::uint32_t> digits(Elem x) const;

  Elem alpha(Elem x) const { return alpha_.at(x); }
  Elem beta(Elem x) const { return beta_.at(x); }
  /// Distinct alpha values in increasing id order; one per left coset.
  const std::vector<Elem>& representatives() const noexcept { return reps_; }

 private:
  Subgroup l_;
  std::vector<Subgroup> chain_;
  std::vector<Elem> steps_;
  std::vector<std::uint32_t> primes_;
  std::vector<Elem> alpha_;
  std::vector<Elem> beta_;
  std::vector<Elem> reps_;
};

/// G/N on the transversal encoding: the code of a coset is alpha(x) and the
/// product of two codes is alpha(a b).
struct QuotientMap {
  GroupPtr quotient;
  /// Parent id -> quotient id.
  std::vector<Elem> project;
  /// Quotient id -> coset representative alpha(x) in the parent.
  std::vector<Elem> lift;
};
/// N must be normal.
QuotientMap make_quotient(const CosetTransversal& transversal);

/// A subgroup as a group in its own right; codes hold the parent id.
struct SubgroupEmbedding {
  GroupPtr group;
  /// Own id -> parent id.
  std::vector<Elem> to_parent;
  /// Parent id -> own id, kNotInSubgroup outside.
  std::vector<Elem> from_parent;
};
inline constexpr Elem kNotInSubgroup = ~Elem{0};
SubgroupEmbedding embed(const Subgroup& s);

/// Image of a parent subgroup contained in the embedded subgroup.
Subgroup restrict_to(const SubgroupEmbedding& e, const Subgroup& h);
/// Image of a parent subgroup in the quotient.
Subgroup project_subgroup(const QuotientMap& q, const Subgroup& h);

}  // namespace nilhsp

#endif
