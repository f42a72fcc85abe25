#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "nilhsp/catalog.hpp"
#include "nilhsp/errors.hpp"
#include "nilhsp/group.hpp"
#include "nilhsp/transversal.hpp"
#include "oracle.hpp"

using namespace nilhsp;

namespace {

Elem at(const GroupPtr& g, Code c) { return g->find(c).value(); }

std::vector<GroupPtr> catalog_up_to_512() {
  std::vector<GroupPtr> out;
  for (const auto& name : fixtures::small_catalog()) out.push_back(parse_group_name(name));
  out.push_back(parse_group_name("heisenberg:5"));
  out.push_back(parse_group_name("abelian:2^2,3"));
  out.push_back(direct_product(make_heisenberg(3), make_abelian({2})));
  out.push_back(parse_group_name("dihedral:32"));
  out.push_back(parse_group_name("heisenberg:7"));
  return out;
}

}  // namespace

TEST(Group, BasicExamples) {
  const GroupPtr d8 = make_dihedral(8);
  EXPECT_EQ(d8->inv(d8->identity()), d8->identity());
  EXPECT_EQ(d8->element_order(at(d8, {0, 1})), 2u);
  EXPECT_EQ(d8->element_order(at(d8, {1, 0})), 4u);
  const GroupPtr h3 = make_heisenberg(3);
  ASSERT_EQ(h3->order(), 27u);
  for (Elem x = 1; x < 27; ++x) EXPECT_EQ(h3->element_order(x), 3u);
  EXPECT_THROW(d8->check(8), std::out_of_range);
}

TEST(Group, CatalogOrders) {
  EXPECT_EQ(make_heisenberg(5)->order(), 125u);
  EXPECT_EQ(make_unitriangular4(2)->order(), 64u);
  EXPECT_EQ(make_unitriangular4(3)->order(), 729u);
  EXPECT_EQ(make_dihedral(16)->order(), 16u);
  EXPECT_EQ(make_abelian({4, 2, 3})->order(), 24u);
  EXPECT_EQ(make_quaternion8()->order(), 8u);
  EXPECT_EQ(make_symmetric(4)->order(), 24u);
  EXPECT_EQ(direct_product(make_dihedral(8), make_abelian({3}))->order(), 24u);
  EXPECT_THROW(make_heisenberg(4), std::invalid_argument);
  EXPECT_THROW(make_dihedral(6 + 1), std::invalid_argument);
  EXPECT_THROW(make_abelian({}), std::invalid_argument);
}

TEST(Group, AxiomsOnCatalog) {
  for (const GroupPtr& g : catalog_up_to_512()) {
    SCOPED_TRACE(g->name());
    const std::size_t n = g->order();
    for (Elem x = 0; x < n; ++x) {
      ASSERT_EQ(g->mul(x, g->inv(x)), g->identity());
      ASSERT_EQ(g->mul(g->identity(), x), x);
      ASSERT_EQ(oracle::order_of(*g, x), g->element_order(x));
    }
    RandomSource rng(n);
    const std::size_t triples = n <= 64 ? n * n * n : 20000;
    for (std::size_t t = 0; t < triples; ++t) {
      Elem a, b, c;
      if (n <= 64) {
        a = static_cast<Elem>(t / (n * n));
        b = static_cast<Elem>(t / n % n);
        c = static_cast<Elem>(t % n);
      } else {
        a = static_cast<Elem>(rng.below(n));
        b = static_cast<Elem>(rng.below(n));
        c = static_cast<Elem>(rng.below(n));
      }
      ASSERT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c)));
    }
  }
}

TEST(Group, TableBackendKeepsIds) {
  const GroupPtr h = make_heisenberg(3);
  const GroupPtr t = as_table(h);
  EXPECT_FALSE(t->has_codes());
  for (Elem a = 0; a < 27; ++a) {
    for (Elem b = 0; b < 27; ++b) ASSERT_EQ(t->mul(a, b), h->mul(a, b));
  }
}

TEST(Group, TableRoundTrip) {
  const GroupPtr q = make_quaternion8();
  std::stringstream buf;
  write_table(*q, buf);
  const GroupPtr r = read_table(buf, "copy");
  ASSERT_EQ(r->order(), 8u);
  for (Elem a = 0; a < 8; ++a) {
    for (Elem b = 0; b < 8; ++b) EXPECT_EQ(r->mul(a, b), q->mul(a, b));
  }
}

TEST(Group, RejectsNonGroupTables) {
  // Not a latin square.
  EXPECT_THROW(Group::from_table("bad", {{0, 1}, {1, 1}}, {1}), std::invalid_argument);
  // Latin square with identity 0 that is not associative.
  const std::vector<std::vector<Elem>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                            {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(Group::from_table("loop", loop, {1, 2}), std::invalid_argument);
  // Generators that do not generate.
  EXPECT_THROW(Group::from_table("z2z2", {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {1}),
               std::invalid_argument);
  std::istringstream junk("order 2\n0 1\n1\n");
  EXPECT_THROW(read_table(junk, "junk"), ParseError);
}

TEST(Group, ParseNames) {
  EXPECT_EQ(parse_group_name("heisenberg:3")->order(), 27u);
  EXPECT_EQ(parse_group_name("abelian:2^2,3")->order(), 12u);
  EXPECT_EQ(parse_group_name("abelian:2,2,2,2")->order(), 16u);
  EXPECT_EQ(parse_group_name("dihedral:8")->order(), 8u);
  EXPECT_EQ(parse_group_name("s3")->order(), 6u);
  for (const char* bad : {"", "foo", "heisenberg:", "heisenberg:x", "heisenberg:4", "abelian:", "dihedral:7",
                          "mystery:3", "table:/nonexistent/file"}) {
    EXPECT_THROW(parse_group_name(bad), ParseError) << bad;
  }
}

TEST(Subgroup, ClosureExamples) {
  const GroupPtr g = as_table(make_abelian({2, 2, 2}));
  const GroupPtr codes = make_abelian({2, 2, 2});
  EXPECT_EQ(Subgroup::trivial(g).order(), 1u);
  EXPECT_EQ(Subgroup(g, {g->generators().begin(), g->generators().end()}).order(), 8u);
  const Elem e1 = at(codes, {1, 0, 0}), e2 = at(codes, {0, 1, 0});
  EXPECT_EQ(Subgroup(g, {e1, e2}).order(), 4u);
}

TEST(Subgroup, ClosureMatchesOracleAndIsIdempotent) {
  for (const GroupPtr& g : catalog_up_to_512()) {
    SCOPED_TRACE(g->name());
    RandomSource rng(g->order() + 1);
    for (int t = 0; t < 30; ++t) {
      std::vector<Elem> gens;
      const std::size_t k = rng.below(3);
      for (std::size_t i = 0; i < k; ++i) gens.push_back(static_cast<Elem>(rng.below(g->order())));
      const Subgroup s(g, gens);
      ASSERT_TRUE(oracle::same(oracle::closure(*g, gens), s));
      EXPECT_EQ(g->order() % s.order(), 0u);
      const Subgroup again(g, {s.elements().begin(), s.elements().end()});
      EXPECT_EQ(again, s);
      EXPECT_TRUE(std::is_sorted(s.elements().begin(), s.elements().end()));
    }
  }
}

TEST(Subgroup, LatticeOperations) {
  const GroupPtr g = make_dihedral(8);
  const Subgroup rot(g, {at(g, {1, 0})});
  const Subgroup refl(g, {at(g, {0, 1})});
  EXPECT_EQ(join(rot, refl).order(), 8u);
  EXPECT_EQ(intersect(rot, refl).order(), 1u);
  EXPECT_EQ(product(rot, refl).order(), 8u);
  EXPECT_EQ(adjoin(refl, at(g, {2, 0})).order(), 4u);
  EXPECT_TRUE(join(rot, refl).contains(rot));
  EXPECT_FALSE(rot.contains(refl));
  const std::vector<Elem> many{at(g, {1, 0}), at(g, {2, 0}), at(g, {3, 0}), at(g, {0, 1})};
  EXPECT_EQ(generated(g, many).generators().size(), 2u);
}

TEST(Transversal, Examples) {
  const GroupPtr z4 = make_abelian({4});
  const Elem one = at(z4, {1}), two = at(z4, {2}), three = at(z4, {3});
  const CosetTransversal t(Subgroup(z4, {two}));
  EXPECT_EQ(t.alpha(three), one);
  EXPECT_EQ(t.beta(three), two);
  std::vector<Elem> reps = t.representatives();
  std::sort(reps.begin(), reps.end());
  EXPECT_EQ(reps, (std::vector<Elem>{z4->identity(), one}));

  const GroupPtr h = make_heisenberg(3);
  const CosetTransversal whole(Subgroup::whole(h));
  const CosetTransversal none(Subgroup::trivial(h));
  for (Elem x = 0; x < 27; ++x) {
    EXPECT_EQ(whole.alpha(x), h->identity());
    EXPECT_EQ(whole.beta(x), x);
    EXPECT_EQ(none.alpha(x), x);
    EXPECT_EQ(none.beta(x), h->identity());
  }
}

TEST(Transversal, InvariantsOnCatalog) {
  for (const GroupPtr& g : catalog_up_to_512()) {
    SCOPED_TRACE(g->name());
    RandomSource rng(g->order() + 2);
    std::vector<Subgroup> targets{Subgroup::trivial(g), Subgroup::whole(g)};
    for (int t = 0; t < 6; ++t) targets.emplace_back(g, std::vector<Elem>{static_cast<Elem>(rng.below(g->order()))});
    for (const Subgroup& l : targets) {
      const CosetTransversal tr(l);
      EXPECT_EQ(tr.representatives().size() * l.order(), g->order());
      for (Elem x = 0; x < g->order(); ++x) {
        ASSERT_EQ(g->mul(tr.alpha(x), tr.beta(x)), x);
        ASSERT_TRUE(l.contains(tr.beta(x)));
        for (Elem w : l.generators()) ASSERT_EQ(tr.alpha(g->mul(x, w)), tr.alpha(x));
      }
    }
  }
}

TEST(Transversal, QuotientAndEmbedding) {
  const GroupPtr h = make_heisenberg(3);
  const Subgroup centre(h, {at(h, {0, 0, 1})});
  const QuotientMap q = make_quotient(CosetTransversal(centre));
  EXPECT_EQ(q.quotient->order(), 9u);
  for (Elem a = 0; a < 27; ++a) {
    for (Elem b = 0; b < 27; ++b) ASSERT_EQ(q.project[h->mul(a, b)], q.quotient->mul(q.project[a], q.project[b]));
  }
  const SubgroupEmbedding e = embed(Subgroup(h, {at(h, {1, 0, 0}), at(h, {0, 0, 1})}));
  EXPECT_EQ(e.group->order(), 9u);
  for (Elem a = 0; a < 9; ++a) EXPECT_EQ(e.from_parent[e.to_parent[a]], a);
}
