#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nilhsp/catalog.hpp"
#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"
#include "oracle.hpp"

using namespace nilhsp;

namespace {

Elem at(const GroupPtr& g, Code c) { return g->find(c).value(); }

std::vector<GroupPtr> nilpotent_catalog() {
  std::vector<GroupPtr> out;
  for (const auto& name : fixtures::small_catalog()) out.push_back(parse_group_name(name));
  out.push_back(make_heisenberg(5));
  out.push_back(make_abelian({4, 3}));
  out.push_back(direct_product(make_dihedral(8), make_abelian({3})));
  out.push_back(make_dihedral(32));
  out.push_back(as_table(make_quaternion8()));
  return out;
}

/// Every element of order p in K/B, as a coset representative in K.
bool holds_all_order_p(const Subgroup& k, const Subgroup& b, const Subgroup& l, std::uint32_t p) {
  const Group& g = k.group();
  for (Elem x : k.elements()) {
    if (b.contains(x)) continue;
    if (!b.contains(g.pow(x, p))) continue;
    if (!l.contains(x)) return false;
  }
  return true;
}

}  // namespace

TEST(Commutator, Examples) {
  const GroupPtr a = make_abelian({2, 2, 2, 2});
  EXPECT_TRUE(derived_subgroup(Subgroup::whole(a)).is_trivial());
  const GroupPtr h = make_heisenberg(3);
  const Subgroup hd = derived_subgroup(Subgroup::whole(h));
  EXPECT_EQ(hd.order(), 3u);
  EXPECT_EQ(hd, center(h));
  const GroupPtr u = make_unitriangular4(2);
  const Subgroup ud = derived_subgroup(Subgroup::whole(u));
  EXPECT_EQ(commutator_subgroup(Subgroup::whole(u), ud).order(), 2u);
  const GroupPtr d8 = make_dihedral(8);
  EXPECT_EQ(derived_subgroup(Subgroup::whole(d8)).order(), 2u);
}

TEST(Commutator, RequiresNormality) {
  const GroupPtr d8 = make_dihedral(8);
  const Subgroup refl(d8, {at(d8, {0, 1})});
  EXPECT_THROW(commutator_subgroup(Subgroup::whole(d8), refl), std::invalid_argument);
}

TEST(CentralSeries, ClassExamples) {
  EXPECT_EQ(nilpotency_class(make_abelian({2, 2, 2, 2})), 1u);
  EXPECT_EQ(nilpotency_class(make_heisenberg(3)), 2u);
  EXPECT_EQ(nilpotency_class(make_unitriangular4(2)), 3u);
  EXPECT_EQ(nilpotency_class(make_unitriangular4(3)), 3u);
  EXPECT_EQ(nilpotency_class(make_dihedral(8)), 2u);
  EXPECT_EQ(nilpotency_class(make_dihedral(16)), 3u);
  EXPECT_EQ(nilpotency_class(make_quaternion8()), 2u);
  EXPECT_THROW(lower_central_series(as_table(make_symmetric(3))), NotNilpotent);
  EXPECT_FALSE(is_nilpotent(make_symmetric(4)));
  EXPECT_TRUE(is_nilpotent(make_heisenberg(5)));
}

TEST(CentralSeries, MatchesEnumeration) {
  for (const GroupPtr& g : nilpotent_catalog()) {
    SCOPED_TRACE(g->name());
    const CentralSeries s = lower_central_series(g);
    ASSERT_TRUE(s.terms.front().is_whole());
    ASSERT_TRUE(s.terms.back().is_trivial());
    oracle::ElemSet prev = oracle::everything(*g);
    for (std::size_t i = 1; i < s.terms.size(); ++i) {
      const oracle::ElemSet expect = oracle::commutator_set(*g, oracle::everything(*g), prev);
      ASSERT_TRUE(oracle::same(expect, s.terms[i]));
      EXPECT_LT(s.terms[i].order(), s.terms[i - 1].order());
      EXPECT_TRUE(s.terms[i - 1].contains(s.terms[i]));
      prev = expect;
    }
  }
}

TEST(Sylow, Examples) {
  const GroupPtr h = make_heisenberg(3);
  EXPECT_TRUE(sylow(h, 3).is_whole());
  const GroupPtr z6 = make_abelian({2, 3});
  EXPECT_EQ(sylow(z6, 3).order(), 3u);
  EXPECT_EQ(sylow(z6, 2).order(), 2u);
  EXPECT_EQ(sylow(make_abelian({12, 2}), 2).order(), 8u);
  EXPECT_THROW(sylow(h, 2), std::invalid_argument);
}

TEST(Sylow, OrdersMultiplyAndArePrimePowers) {
  for (const GroupPtr& g : nilpotent_catalog()) {
    SCOPED_TRACE(g->name());
    std::size_t product = 1;
    for (std::uint64_t p : prime_factors(g->order())) {
      const Subgroup s = sylow(g, static_cast<std::uint32_t>(p));
      std::size_t part = 1, rest = g->order();
      while (rest % p == 0) {
        part *= p;
        rest /= p;
      }
      EXPECT_EQ(s.order(), part);
      for (Elem x : s.elements()) {
        std::uint64_t o = g->element_order(x);
        while (o % p == 0) o /= p;
        EXPECT_EQ(o, 1u);
      }
      product *= s.order();
    }
    EXPECT_EQ(product, g->order());
  }
}

TEST(Normalizer, Examples) {
  const GroupPtr d8 = make_dihedral(8);
  const Subgroup refl(d8, {at(d8, {0, 1})});
  EXPECT_EQ(normalizer(Subgroup::whole(d8), refl).order(), 4u);
  const Subgroup rot(d8, {at(d8, {1, 0})});
  EXPECT_TRUE(normalizer(Subgroup::whole(d8), rot).is_whole());
}

TEST(Normalizer, MatchesEnumerationAndStrictness) {
  std::vector<GroupPtr> groups = nilpotent_catalog();
  groups.push_back(direct_product(make_unitriangular4(2), make_abelian({4})));
  for (const GroupPtr& g : groups) {
    ASSERT_LE(g->order(), 256u);
    SCOPED_TRACE(g->name());
    const Subgroup whole = Subgroup::whole(g);
    for (const Subgroup& h : all_subgroups(g)) {
      const Subgroup n = normalizer(whole, h);
      if (g->order() <= 64) {
        oracle::ElemSet expect(g->order(), false);
        for (Elem x = 0; x < g->order(); ++x) {
          bool ok = true;
          for (Elem y : h.elements()) ok = ok && h.contains(g->conjugate(x, y));
          expect[x] = ok;
        }
        ASSERT_TRUE(oracle::same(expect, n));
      }
      ASSERT_TRUE(n.contains(h));
      ASSERT_TRUE(is_normal_in(h, n));
      if (!h.is_whole()) ASSERT_GT(n.order(), h.order()) << describe(h);
    }
  }
}

TEST(ChiefSeries, Examples) {
  const GroupPtr z4 = make_abelian({4});
  const ChiefSeries c4 = chief_series(z4);
  ASSERT_EQ(c4.terms.size(), 3u);
  EXPECT_EQ(c4.terms[1], Subgroup(z4, {at(z4, {2})}));
  EXPECT_EQ(c4.primes, (std::vector<std::uint32_t>{2, 2}));
  const ChiefSeries h = chief_series(make_heisenberg(3));
  EXPECT_EQ(h.primes, (std::vector<std::uint32_t>{3, 3, 3}));
  const ChiefSeries z6 = chief_series(make_abelian({2, 3}));
  EXPECT_EQ(z6.primes.size(), 2u);
  EXPECT_EQ(std::set<std::uint32_t>(z6.primes.begin(), z6.primes.end()), (std::set<std::uint32_t>{2, 3}));
  EXPECT_THROW(chief_series(make_symmetric(3)), NotNilpotent);
}

TEST(ChiefSeries, InvariantsOnCatalog) {
  for (const GroupPtr& g : nilpotent_catalog()) {
    SCOPED_TRACE(g->name());
    const ChiefSeries c = chief_series(g);
    ASSERT_EQ(c.terms.size(), c.primes.size() + 1);
    EXPECT_TRUE(c.terms.front().is_whole());
    EXPECT_TRUE(c.terms.back().is_trivial());
    for (std::size_t i = 1; i < c.terms.size(); ++i) {
      EXPECT_EQ(c.terms[i - 1].order(), c.terms[i].order() * c.primes[i - 1]);
      EXPECT_TRUE(c.terms[i - 1].contains(c.terms[i]));
      for (Elem x = 0; x < g->order(); ++x) {
        for (Elem y : c.terms[i].generators()) ASSERT_TRUE(c.terms[i].contains(g->conjugate(x, y)));
      }
    }
  }
}

TEST(ElementaryQuotient, Examples) {
  const GroupPtr z4 = make_abelian({4});
  EXPECT_TRUE(is_elementary_abelian_quotient(Subgroup::whole(z4), Subgroup::whole(z4)));
  EXPECT_FALSE(is_elementary_abelian_quotient(Subgroup::whole(z4), Subgroup::trivial(z4)));
  const GroupPtr h = make_heisenberg(3);
  EXPECT_TRUE(is_elementary_abelian_quotient(Subgroup::whole(h), center(h), 3));
  EXPECT_FALSE(is_elementary_abelian_quotient(Subgroup::whole(h), Subgroup::trivial(h), 3));
  EXPECT_FALSE(is_elementary_abelian_quotient(Subgroup::whole(make_abelian({2, 2})), Subgroup::trivial(make_abelian({2, 2})), 3));
}

TEST(ElementaryQuotient, ReducerExamples) {
  const GroupPtr z4 = make_abelian({4});
  EXPECT_EQ(elementary_quotient_reducer(Subgroup::whole(z4), Subgroup::trivial(z4), 2), Subgroup(z4, {at(z4, {2})}));
  const GroupPtr z82 = make_abelian({8, 2});
  const Subgroup l = elementary_quotient_reducer(Subgroup::whole(z82), Subgroup::trivial(z82), 2);
  EXPECT_EQ(l, Subgroup(z82, {at(z82, {4, 0}), at(z82, {0, 1})}));
  const GroupPtr e = make_abelian({3, 3});
  EXPECT_TRUE(elementary_quotient_reducer(Subgroup::whole(e), Subgroup::trivial(e), 3).is_whole());
  // Generators (1,0) and (1,1) of Z4 x Z2 alone would only give <(2,0)>.
  const GroupPtr z42 = make_abelian({4, 2});
  const GroupPtr skew = Group::from_table("z4xz2-skew",
                                          [&] {
                                            std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
                                            for (Elem a = 0; a < 8; ++a)
                                              for (Elem b = 0; b < 8; ++b) t[a][b] = z42->mul(a, b);
                                            return t;
                                          }(),
                                          {at(z42, {1, 0}), at(z42, {1, 1})});
  const Subgroup ls = elementary_quotient_reducer(Subgroup::whole(skew), Subgroup::trivial(skew), 2);
  EXPECT_EQ(ls.order(), 4u);
}

TEST(ElementaryQuotient, ReducerPropertyOnCatalog) {
  for (const GroupPtr& g : nilpotent_catalog()) {
    SCOPED_TRACE(g->name());
    if (g->order() > 128) continue;
    for (std::uint64_t p : prime_factors(g->order())) {
      const Subgroup s = sylow(g, static_cast<std::uint32_t>(p));
      const auto subs = all_subgroups(g);
      const Subgroup derived = derived_subgroup(s);
      for (const Subgroup& b : subs) {
        // The reduction only ever passes B = K'H0, which contains K'.
        if (!s.contains(b) || !b.contains(derived) || !is_normal_in(b, s)) continue;
        const Subgroup l = elementary_quotient_reducer(s, b, static_cast<std::uint32_t>(p));
        ASSERT_TRUE(l.contains(b));
        ASSERT_TRUE(s.contains(l));
        ASSERT_TRUE(holds_all_order_p(s, b, l, static_cast<std::uint32_t>(p)));
        ASSERT_EQ(l == s, is_elementary_abelian_quotient(s, b, static_cast<std::uint32_t>(p)));
      }
    }
  }
}

TEST(Subgroups, CountsMatchEnumeration) {
  EXPECT_EQ(all_subgroups(make_abelian({2, 2, 2, 2})).size(), 67u);
  EXPECT_EQ(all_subgroups(make_dihedral(8)).size(), 10u);
  EXPECT_EQ(all_subgroups(make_quaternion8()).size(), 6u);
  for (const GroupPtr& g : nilpotent_catalog()) {
    if (g->order() > 64) continue;
    SCOPED_TRACE(g->name());
    const auto lattice = oracle::subgroup_lattice(*g);
    const auto subs = all_subgroups(g);
    ASSERT_EQ(subs.size(), lattice.size());
    for (const Subgroup& s : subs) {
      const std::vector<Elem> el(s.elements().begin(), s.elements().end());
      EXPECT_TRUE(lattice.count(el));
    }
  }
}
