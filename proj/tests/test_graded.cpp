#include <gtest/gtest.h>

#include "support.hpp"

using namespace iotahat;

namespace {

BasisPtr random_basis(int n, const std::string& prefix) {
  std::vector<Generator> g;
  for (int i = 0; i < n; ++i) g.push_back({prefix + std::to_string(i), fixtures::uniform(-6, 6)});
  return make_basis(g);
}

ModuleMap random_map(const BasisPtr& s, const BasisPtr& t, int degree) {
  ModuleMap m(s, t, degree);
  for (std::size_t r = 0; r < t->size(); ++r)
    for (std::size_t c = 0; c < s->size(); ++c)
      if (m.admissible(r, c) && fixtures::uniform(0, 1)) m.set(r, c);
  return m;
}

Element random_element(const BasisPtr& b) {
  Element e;
  for (std::size_t i = 0; i < b->size(); ++i)
    if (fixtures::uniform(0, 1)) e.add({i, fixtures::uniform(0, 3)});
  return e;
}

}  // namespace

TEST(GradedBasis, LookupAndErrors) {
  auto b = make_basis({{"a", 0}, {"b", -3}});
  EXPECT_EQ(b->index("b"), 1u);
  EXPECT_EQ(b->max_grading(), 0);
  EXPECT_EQ(b->min_grading(), -3);
  EXPECT_FALSE(b->find("c"));
  EXPECT_THROW(b->index("c"), Error);
  EXPECT_THROW(make_basis({{"a", 0}, {"a", 2}}), Error);
}

TEST(Element, XorArithmeticAndGrading) {
  auto b = make_basis({{"x", 0}, {"y", 2}});
  Element e{{0, 1}, {1, 2}};
  EXPECT_EQ(e.grading(*b), -2);
  EXPECT_TRUE(e.in_image_of_u());
  e.add({0, 1});
  EXPECT_EQ(e, (Element{{1, 2}}));
  EXPECT_EQ(e.times_u(1).to_string(*b), "U^3*y");
  EXPECT_FALSE((Element{{0, 0}, {1, 0}}).grading(*b));
  EXPECT_TRUE((e + e).is_zero());
}

TEST(ModuleMap, ForcedExponent) {
  const AlmostIotaComplex x3 = x_complex(3);
  // d T2 = U^3 T1, from grading -5 to 0
  EXPECT_EQ(x3.differential.exponent(1, 2), 3);
  EXPECT_EQ(apply(x3.differential, Element{{2, 0}}), (Element{{1, 3}}));
  EXPECT_EQ(apply(x3.omega, Element{{0, 2}}), (Element{{1, 2}}));
  ModuleMap bad(x3.basis, x3.basis, -1);
  EXPECT_THROW(bad.set(2, 0), Error);  // would need a negative exponent
  EXPECT_THROW(bad.set(0, 1), Error);  // wrong parity
}

TEST(ModuleMap, ExponentMatchesGradingsOnRandomMaps) {
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_basis(5, "s"), t = random_basis(4, "t");
    const int degree = fixtures::uniform(-2, 2);
    const ModuleMap f = random_map(s, t, degree);
    for (std::size_t r = 0; r < t->size(); ++r)
      for (std::size_t c = 0; c < s->size(); ++c) {
        const auto k = f.exponent(r, c);
        const int diff = t->grading(r) - s->grading(c) - degree;
        EXPECT_EQ(k.has_value(), diff >= 0 && diff % 2 == 0);
        if (k) {
          EXPECT_EQ(s->grading(c) + degree, t->grading(r) - 2 * *k);
        }
      }
  }
}

TEST(ModuleMap, CompositionLaws) {
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_basis(4, "a"), b = random_basis(5, "b"), c = random_basis(3, "c"), d = random_basis(4, "d");
    const ModuleMap f = random_map(a, b, 0), g = random_map(b, c, -1), h = random_map(c, d, 1);
    EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    EXPECT_EQ(compose(ModuleMap::identity(b), f), f);
    const Element e = random_element(a);
    EXPECT_EQ(apply(compose(g, f), e), apply(g, apply(f, e)));
    // reduction mod U is multiplicative
    EXPECT_EQ(mod_u_reduce(compose(g, f)), mod_u_reduce(compose(mod_u_reduce(g), mod_u_reduce(f))));
  }
}

TEST(ModuleMap, StructureMapIdentities) {
  const AlmostIotaComplex x3 = x_complex(3);
  EXPECT_TRUE(compose(x3.differential, x3.differential).is_zero());
  EXPECT_EQ(compose(ModuleMap::identity(x3.basis), x3.omega), x3.omega);
  const AlmostIotaComplex sd = self_dual_complex();
  EXPECT_EQ(to_string(compose(sd.omega, sd.omega)), "T-1 -> U^2*T1");
  EXPECT_EQ(to_string(mod_u_reduce(sd.omega)), "0");
  EXPECT_EQ(to_string(mod_u_reduce(x3.omega)), "T0 -> T1");
  EXPECT_EQ(to_string(zero_map(x3.basis, x3.basis, 0)), "0");
}

TEST(Towers, Examples) {
  const PairedBasis pb = tower_decomposition(build(Params({-1, 3})).differential);
  EXPECT_EQ(pb.nontorsion.size(), 1u);
  const auto towers = pb.towers();
  ASSERT_EQ(towers.size(), 2u);
  // nontorsion tower at 0, torsion tower of height 3 at 0
  EXPECT_EQ(towers[0].top_grading, 0);
  EXPECT_EQ(towers[1].top_grading, 0);
  EXPECT_NE(towers[0].height.has_value(), towers[1].height.has_value());

  auto single = make_complex({{"x", 4}}, {}, {});
  EXPECT_EQ(tower_decomposition(single.differential).towers().size(), 1u);

  const auto acyclic = fixtures::torsion_pair(0, 0, "");
  const PairedBasis pa = tower_decomposition(acyclic.differential);
  EXPECT_TRUE(pa.towers().empty());
  ASSERT_EQ(pa.pairs.size(), 1u);
  EXPECT_EQ(pa.pairs[0].eta, 0);

  auto bad = make_complex({{"a", 1}, {"b", 0}, {"c", -1}}, {{0, 1}, {1, 2}}, {});
  EXPECT_THROW(tower_decomposition(bad.differential), Error);
}

TEST(Towers, PairedBasisIsExact) {
  for (int trial = 0; trial < 60; ++trial) {
    const AlmostIotaComplex c = fixtures::random_valid_complex();
    const PairedBasis pb = tower_decomposition(c.differential);
    const std::size_t n = c.size();
    EXPECT_EQ(pb.to_old.bits() * pb.from_old.bits(), BitMatrix::identity(n));
    EXPECT_EQ(compose(pb.from_old, compose(c.differential, pb.to_old)).bits(), pb.differential.bits());
    // new differential is exactly the list of arrows y -> U^eta z
    BitMatrix expect(n, n);
    for (const auto& p : pb.pairs) {
      expect.set(p.z, p.y);
      EXPECT_EQ(*pb.differential.exponent(p.z, p.y), p.eta);
    }
    EXPECT_EQ(pb.differential.bits(), expect);
    EXPECT_EQ(pb.nontorsion.size() + 2 * pb.pairs.size(), n);
    EXPECT_EQ(pb.nontorsion.size(), 1u);
  }
}
