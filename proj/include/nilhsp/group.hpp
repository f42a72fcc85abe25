#ifndef NILHSP_GROUP_HPP
#define NILHSP_GROUP_HPP

// Finite groups with dense element ids. Two backends:
//   table  - an explicit multiplication table, ids as supplied;
//   codes  - elements carry an integer code (permutation images, matrix
//            entries, tuples) and are enumerated breadth-first from the
//            identity, which gets id 0.
// Membership, closure and normalizers are computed by enumeration; the
// enumeration cap is kMaxOrder elements.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilhsp {

using Elem = std::uint32_t;
using Code = std::vector<std::int32_t>;

inline constexpr std::size_t kMaxOrder = 100000;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

struct CodeHash {
  std::size_t operator()(const Code& c) const noexcept;
};

class Group {
 public:
  using CodeProduct = std::function<Code(const Code&, const Code&)>;

  /// table[a][b] = a*b. Checks the axioms (latin square, two-sided identity,
  /// associativity via Light's test on the generators) and that generators
  /// generate. Throws std::invalid_argument otherwise.
  static GroupPtr from_table(std::string name, std::vector<std::vector<Elem>> table, std::vector<Elem> generators);

  /// Breadth-first enumeration of the group generated by generator codes
  /// under product. Throws BudgetExceeded past kMaxOrder elements.
  static GroupPtr from_codes(std::string name, Code identity, std::vector<Code> generators, CodeProduct product);

  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  std::span<const Elem> generators() const noexcept { return generators_; }

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// Least m >= 1 with a^m = 1, found by stripping primes from the order.
  std::uint64_t element_order(Elem a) const;
  /// x^-1 y^-1 x y.
  Elem commutator(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  /// g x g^-1.
  Elem conjugate(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

  bool has_codes() const noexcept { return !codes_.empty(); }
  const Code& code(Elem a) const;
  std::optional<Elem> find(const Code& c) const;
  /// Code tuple "(1,0,2)" for code groups, the id otherwise.
  std::string label(Elem a) const;

  /// Throws std::out_of_range for ids outside [0, order).
  void check(Elem a) const;

 private:
  Group() = default;
  void finish_inverses();

  std::string name_;
  std::size_t order_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> generators_;
  std::vector<Elem> table_;  // order^2 entries when present
  std::vector<Elem> inverse_;
  std::vector<Code> codes_;
  std::unordered_map<Code, Elem, CodeHash> index_;
  CodeProduct product_;
};

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Subgroup of a parent group, given by generators. The element set is the
/// breadth-first closure under right multiplication by generators and is
/// computed at construction.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Elem> generators);
  static Subgroup trivial(GroupPtr parent) { return Subgroup(parent, {}); }
  static Subgroup whole(GroupPtr parent);

  const Group& group() const noexcept { return *parent_; }
  const GroupPtr& parent() const noexcept { return parent_; }
  std::span<const Elem> generators() const noexcept { return generators_; }
  /// Sorted ascending.
  std::span<const Elem> elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Elem a) const { return a < member_.size() && member_[a]; }
  bool contains(const Subgroup& other) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole() const noexcept { return elements_.size() == parent_->order(); }

  /// Same parent and same element set.
  friend bool operator==(const Subgroup& a, const Subgroup& b);

 private:
  GroupPtr parent_;
  std::vector<Elem> generators_;
  std::vector<Elem> elements_;
  std::vector<bool> member_;
};

/// Breadth-first closure of generators, in discovery order.
std::vector<Elem> closure(const Group& g, std::span<const Elem> generators);

/// <a, b>; generators of b already in a are skipped.
Subgroup join(const Subgroup& a, const Subgroup& b);
/// <a, x>.
Subgroup adjoin(const Subgroup& a, Elem x);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// Elementwise products; a subgroup whenever one factor normalizes the other.
Subgroup product(const Subgroup& a, const Subgroup& b);

/// Generated subgroup with a reduced generating list: each candidate is kept
/// only when it is not already generated by the earlier ones.
Subgroup generated(GroupPtr parent, std::span<const Elem> candidates);

/// Renders "<g1, g2> order k" with element labels.
std::string describe(const Subgroup& s);

}  // namespace nilhsp

#endif
