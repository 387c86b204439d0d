#include <algorithm>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace iotahat;

namespace {

std::vector<Tower> towers_of(const AlmostIotaComplex& c) { return tower_decomposition(c.differential).towers(); }

bool same_up_to_names(const AlmostIotaComplex& a, const AlmostIotaComplex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.basis->grading(i) != b.basis->grading(i)) return false;
  return a.differential.bits() == b.differential.bits() && a.omega.bits() == b.omega.bits();
}

}  // namespace

TEST(Validate, StandardAndCatalogComplexesPass) {
  EXPECT_TRUE(validate(build(Params({-1, 3}))).ok());
  EXPECT_TRUE(validate(build(Params())).ok());
  EXPECT_TRUE(validate(self_dual_complex()).ok());
  for (int i = 1; i <= 6; ++i) EXPECT_TRUE(validate(x_complex(i)).ok()) << i;
  EXPECT_TRUE(validate(build(Params({-1, 2, 1}))).ok());  // augmented: two towers allowed
}

TEST(Validate, ReportsEachFailure) {
  // d^2 != 0
  auto not_square_zero = make_complex({{"a", 1}, {"b", 0}, {"c", -1}, {"x", 0}}, {{0, 1}, {1, 2}}, {});
  EXPECT_FALSE(validate(not_square_zero).square_zero);

  // two nontorsion towers in a non-augmented complex
  auto rank_two = make_complex({{"a", 0}, {"b", 0}}, {}, {});
  auto r2 = validate(rank_two);
  EXPECT_FALSE(r2.ok());
  EXPECT_FALSE(r2.rank_one);

  // tower in odd grading
  auto odd = make_complex({{"a", 1}}, {}, {});
  EXPECT_FALSE(validate(odd).even_tower);

  // reduced flag lies: d T1 = T2 with exponent 0
  auto lying = make_complex({{"x", 0}, {"y", 1}, {"z", 0}}, {{1, 2}}, {});
  lying.reduced_flag = true;
  auto rl = validate(lying);
  EXPECT_FALSE(rl.reduced_ok);
  lying.reduced_flag = false;
  EXPECT_TRUE(validate(lying).ok());

  // omega^2 nonzero mod U and not null-homotopic
  auto bad_square = make_complex({{"a", 0}, {"b", 0}, {"c", 0}, {"yb", -1}, {"yc", -1}}, {{3, 1}, {4, 2}},
                                 {{0, 1}, {1, 2}});
  auto rb = validate(bad_square);
  EXPECT_TRUE(rb.square_zero);
  EXPECT_TRUE(rb.rank_one);
  EXPECT_TRUE(rb.omega_chain_mod_u);
  EXPECT_FALSE(rb.omega_square_null);

  // omega not a chain map mod U
  auto bad_chain = make_complex({{"x", 0}, {"y", 1}, {"z", 0}}, {{1, 0}}, {{0, 2}});
  const auto rc = validate(bad_chain);
  EXPECT_TRUE(rc.rank_one);
  EXPECT_FALSE(rc.omega_chain_mod_u);
}

TEST(Validate, RandomComplexesPass) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = fixtures::random_valid_complex();
    const auto r = validate(c);
    EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Normalize, ShiftsTowerTopToZero) {
  const auto c = build(Params({-1, 3}));
  const auto shifted = shift_grading(c, 4);
  EXPECT_FALSE(validate(shifted).normalized);
  EXPECT_TRUE(identical(normalize_grading(shifted), c));
  EXPECT_TRUE(identical(normalize_grading(c), c));
  EXPECT_THROW(normalize_grading(shift_grading(c, 1)), Error);
}

TEST(Reduce, ReducedInputIsUnchanged) {
  const auto c = build(Params({-1, 2, 1, -1}));
  const auto r = reduce(c);
  EXPECT_TRUE(identical(r.reduced, c));
  EXPECT_EQ(r.forward.bits(), BitMatrix::identity(c.size()));
}

TEST(Reduce, CancelsAcyclicPairs) {
  auto c = direct_sum(build(Params({-1, 3})), fixtures::torsion_pair(0, 0, "a"));
  const auto r = reduce(c);
  EXPECT_EQ(r.reduced.size(), 3u);
  EXPECT_TRUE(same_up_to_names(r.reduced, build(Params({-1, 3}))));
}

TEST(Reduce, RandomComplexesKeepTowersAndAreHomotopyEquivalent) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = fixtures::random_valid_complex();
    const auto r = reduce(c);
    EXPECT_EQ(towers_of(r.reduced), towers_of(c));
    EXPECT_TRUE(has_reduced_differential(r.reduced));
    EXPECT_TRUE(validate(r.reduced).ok());
    const ModuleMap& f = r.forward;
    const ModuleMap& g = r.backward;
    EXPECT_EQ(compose(r.reduced.differential, f), compose(f, c.differential));
    EXPECT_EQ(compose(c.differential, g), compose(g, r.reduced.differential));
    EXPECT_EQ(compose(f, g), ModuleMap::identity(r.reduced.basis));
    const ModuleMap lhs = ModuleMap::identity(c.basis) + compose(g, f);
    const ModuleMap rhs = compose(c.differential, r.homotopy) + compose(r.homotopy, c.differential);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(TransferIota, IdentityAndPermutation) {
  const auto c = build(Params({-1, 2, -1, -1}));
  const auto id = ModuleMap::identity(c.basis);
  EXPECT_EQ(transfer_iota(c, c, id, id), c.omega);

  const auto x = x_complex(2);
  auto not_equiv = zero_map(x.basis, x.basis, 0);
  EXPECT_THROW(transfer_iota(x, x, not_equiv, not_equiv), Error);
}

TEST(Dual, XComplexData) {
  for (int i = 1; i <= 4; ++i) {
    const auto d = dual(x_complex(i));
    EXPECT_TRUE(validate(d).ok());
    // d T1* = U^i T2*, omega T1* = T0*
    EXPECT_EQ(apply(d.differential, Element{{1, 0}}), (Element{{2, i}}));
    EXPECT_EQ(apply(d.omega, Element{{1, 0}}), (Element{{0, 0}}));
    EXPECT_EQ(d.basis->grading(2), 2 * i - 1);
  }
}

TEST(Dual, IsAnInvolution) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = normalize_grading(fixtures::random_valid_complex());
    EXPECT_TRUE(identical(dual(dual(c)), c));
  }
}

TEST(Dual, SelfDualExampleUnderIndexReversal) {
  const auto x = self_dual_complex();
  const auto d = dual(x);
  // generator i of the dual corresponds to generator 4 - i of x
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(d.basis->grading(i), x.basis->grading(n - 1 - i));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      EXPECT_EQ(d.differential.test(r, c), x.differential.test(n - 1 - r, n - 1 - c));
      EXPECT_EQ(d.omega.test(r, c), x.omega.test(n - 1 - r, n - 1 - c));
    }
}

TEST(Tensor, UnitAndSmallExample) {
  const auto c = build(Params({-1, 2, 1, -1}));
  EXPECT_TRUE(same_up_to_names(tensor(build(Params()), c), c));
  EXPECT_TRUE(same_up_to_names(tensor(c, build(Params())), c));

  const auto t = tensor(build(Params({-1, 1})), build(Params({-1, 1})));
  ASSERT_EQ(t.size(), 9u);
  EXPECT_EQ(t.basis->index("T1|T0"), 3u);
  EXPECT_EQ(apply(t.omega, Element{{3, 0}}), (Element{{4, 0}}));  // T1 x omega T0
  EXPECT_TRUE(validate(t).ok());
}

TEST(Tensor, RandomPairsAreValid) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = tensor(build(fixtures::random_params(2, 3)), build(fixtures::random_params(2, 3)));
    const auto r = validate(t);
    EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(PairedTensorBasis, RelationsHoldOnGrid) {
  const auto grid = fixtures::params_grid(2, 2);
  int checked = 0;
  for (std::size_t a = 0; a < grid.size(); a += 3)
    for (std::size_t b = 0; b < grid.size(); b += 5) {
      const auto ptb = paired_tensor_basis(grid[a], grid[b]);
      EXPECT_TRUE(ptb.relations_hold()) << format_params(grid[a]) << " " << format_params(grid[b]);
      EXPECT_TRUE(ptb.is_basis()) << format_params(grid[a]) << " " << format_params(grid[b]);
      ++checked;
    }
  EXPECT_GT(checked, 100);
}

TEST(PairedTensorBasis, EtaIsMinimumOfFactors) {
  const auto ptb = paired_tensor_basis(Params({-1, 3}), Params({1, -2}));
  int found = 0;
  for (const auto& a : ptb.arrows)
    if (a.i == 1 && a.j == 1) {
      EXPECT_EQ(a.eta, 2);
      ++found;
    }
  EXPECT_EQ(found, 2);
}

TEST(Contraction, HoldsForSampleComplexes) {
  EXPECT_TRUE(contraction_check(build(Params())));
  EXPECT_TRUE(contraction_check(build(Params({-1, -3, 1, 2}))));
  EXPECT_TRUE(contraction_check(self_dual_complex()));
  for (int trial = 0; trial < 6; ++trial)
    EXPECT_TRUE(contraction_check(reduced_model(fixtures::random_valid_complex(1))));
}
