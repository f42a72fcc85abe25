#ifndef NILHSP_GROUP_ALG_HPP
#define NILHSP_GROUP_ALG_HPP

// Structural algorithms on enumerable groups: commutators, central and chief
// series, Sylow subgroups, normalizers and elementary quotients.

#include <cstdint>
#include <vector>

#include "nilhsp/group.hpp"

namespace nilhsp {

/// g n g^-1 in n for every generator g of `by` and generator n of `sub`.
bool normalizes(const Subgroup& by, const Subgroup& sub);
bool is_normal(const Subgroup& sub) ;
bool is_normal_in(const Subgroup& sub, const Subgroup& ambient);

/// Smallest subgroup containing sub and closed under conjugation by ambient.
Subgroup normal_closure(const Subgroup& sub, const Subgroup& ambient);

/// [A, N] = <[a, n] : a in A, n in N>; N must be normalized by A.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& n);
/// K' = [K, K].
Subgroup derived_subgroup(const Subgroup& k);

/// G = G_0 > G_1 > ... > G_c = 1.
struct CentralSeries {
  std::vector<Subgroup> terms;
  std::size_t nilpotency_class() const noexcept { return terms.size() - 1; }
};

/// Throws NotNilpotent when the series stalls above the trivial subgroup.
CentralSeries lower_central_series(const GroupPtr& g);
std::size_t nilpotency_class(const GroupPtr& g);
bool is_nilpotent(const GroupPtr& g);

/// K_0 = G > K_1 > ... > K_r = 1, each K_i normal with prime index primes[i]
/// in K_{i-1}.
struct ChiefSeries {
  std::vector<Subgroup> terms;
  std::vector<std::uint32_t> primes;
};
ChiefSeries chief_series(const GroupPtr& g);

/// The Sylow subgroup generated by g^(o_g') over the generators of a
/// nilpotent group. Throws std::invalid_argument if p does not divide |G|.
Subgroup sylow(const GroupPtr& g, std::uint32_t p);
Subgroup sylow(const Subgroup& k, std::uint32_t p);

/// N_ambient(h) by enumeration.
Subgroup normalizer(const Subgroup& ambient, const Subgroup& h);
Subgroup center(const GroupPtr& g);

/// K/B elementary abelian for the prime p: generators of K commute modulo B
/// and their p-th powers lie in B. B must be normal in K.
bool is_elementary_abelian_quotient(const Subgroup& k, const Subgroup& b, std::uint32_t p);
/// Same, with p taken from |K/B| (true for the trivial quotient).
bool is_elementary_abelian_quotient(const Subgroup& k, const Subgroup& b);

/// L = <B, g^(p^(a_g - 1)) : g in gens(K)> with a_g the least positive
/// exponent putting g^(p^a_g) in B, completed by every x in K with x^p in B.
/// L/B then holds all order-p elements of K/B.
Subgroup elementary_quotient_reducer(const Subgroup& k, const Subgroup& b, std::uint32_t p);

/// Every subgroup of g, in a deterministic order (by order, then elements).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

}  // namespace nilhsp

#endif
