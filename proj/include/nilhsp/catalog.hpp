#ifndef NILHSP_CATALOG_HPP
#define NILHSP_CATALOG_HPP

// Concrete groups used by the tests, the reduction demo and the simulator.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nilhsp/group.hpp"

namespace nilhsp {

/// Upper unitriangular 3x3 matrices over Z_p, coded (a, b, c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'). Order p^3, class 2 (p odd).
GroupPtr make_heisenberg(std::uint32_t p);
/// Upper unitriangular 4x4 matrices over Z_p, coded by the six entries above
/// the diagonal in row order. Order p^6, class 3.
GroupPtr make_unitriangular4(std::uint32_t p);
/// Dihedral group of the given order (even, >= 4), coded (rotation, flip).
GroupPtr make_dihedral(std::uint32_t order);
/// Direct product of cyclic groups of the given orders (each >= 2).
GroupPtr make_abelian(const std::vector<std::uint32_t>& cycles);
/// Quaternion group on the table backend: ids 0..7 are 1,-1,i,-i,j,-j,k,-k.
GroupPtr make_quaternion8();
/// Symmetric group S_n from two generating permutations, codes are images.
GroupPtr make_symmetric(std::uint32_t n);
/// Permutation backend: codes are image lists, (ab)(i) = a(b(i)).
GroupPtr from_permutations(std::string name, const std::vector<std::vector<std::int32_t>>& generators);
/// Codes concatenate [id in g1, id in g2].
GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);
/// Re-expresses any group on the table backend with the same ids.
GroupPtr as_table(const GroupPtr& g);

/// "order k", then k*k ids (any whitespace), then "generators a b ...".
GroupPtr read_table(std::istream& in, std::string name);
void write_table(const Group& g, std::ostream& out);

/// heisenberg:p, ut4:p, dihedral:N, abelian:p^e,..., symmetric:n, d8, d16,
/// q8, s3, table:path. Throws ParseError for unknown or malformed names.
GroupPtr parse_group_name(const std::string& name);

}  // namespace nilhsp

#endif
