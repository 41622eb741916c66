#include "nilsect/f2.hpp"
#include "nilsect/zcoh.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace nilsect;
using namespace nilsect::testing;

namespace {

Index group_order(const FinAbGroup& g) { return static_cast<Index>(g.order().convert_to<long long>()); }

}  // namespace

TEST(Cohomology, MinusIdentityRankTwo) {
  InvolutiveLattice m(mat({{-1, 0}, {0, -1}}));
  const auto g = h1(m);
  EXPECT_EQ(g.num_generators(), 2);
  EXPECT_TRUE(g.is_elementary_2());
  EXPECT_EQ(group_order(g), 4);
}

TEST(Cohomology, TrivialRankOne) {
  InvolutiveLattice m(mat({{1}}));
  EXPECT_TRUE(h1(m).is_trivial(vec({0})));
  EXPECT_EQ(h1(m).num_generators(), 0);
  EXPECT_EQ(group_order(h2(m)), 2);
  EXPECT_EQ(group_order(tate_h0(m)), 2);
}

TEST(Cohomology, SignRankOne) {
  InvolutiveLattice m(mat({{-1}}));
  EXPECT_EQ(group_order(h2(m)), 1);
  EXPECT_EQ(group_order(tate_h0(m)), 1);
  EXPECT_EQ(group_order(h1(m)), 2);
}

TEST(Cohomology, DiagonalOneMinusOne) {
  InvolutiveLattice m(mat({{1, 0}, {0, -1}}));
  EXPECT_EQ(group_order(h1(m)), 2);
  EXPECT_EQ(brute_force_order(m.plus_tau(), -m.minus_tau(), 3), 2);
}

TEST(Cohomology, SwapPlusFixedGeneratedByFixedVector) {
  InvolutiveLattice m(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  const auto g = h2(m);
  ASSERT_EQ(group_order(g), 2);
  EXPECT_FALSE(g.is_trivial(vec({0, 0, 1})));
  EXPECT_TRUE(g.is_trivial(vec({1, 1, 0})));
  EXPECT_TRUE(g.equivalent(vec({1, 1, 1}), vec({0, 0, 1})));
}

TEST(Cohomology, SwapRankTwo) {
  InvolutiveLattice m(mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(group_order(tate_h0(m)), 1);
  EXPECT_EQ(group_order(h1(m)), 1);
}

TEST(Cohomology, ClassCountsMatchBruteForce) {
  Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = draw(rng, 1, 4);
    const auto t = random_involution(rng, n, 2);
    InvolutiveLattice m(t.tau);
    SCOPED_TRACE(trial);
    const Index o1 = group_order(h1(m)), o2 = group_order(h2(m));
    EXPECT_EQ(o1, Index{1} << t.sign);
    EXPECT_EQ(o2, Index{1} << t.trivial);
    EXPECT_EQ(o1, brute_force_order(m.plus_tau(), -m.minus_tau(), 3));
    EXPECT_EQ(o2, brute_force_order(m.minus_tau(), m.plus_tau(), 3));
  }
}

TEST(Cohomology, RepresentativesAndCoordinates) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = draw(rng, 1, 4);
    InvolutiveLattice m(random_involution(rng, n, 4).tau);
    const auto g = h1(m);
    for (const auto& c : g.elements()) {
      const IntVector rep = g.representative(c);
      EXPECT_TRUE(g.contains(rep));
      EXPECT_TRUE(same_entries(g.coordinates(rep), c));
      const IntVector shifted = rep + IntVector(-m.minus_tau() * IntVector(random_matrix(rng, n, 1, 3)));
      EXPECT_TRUE(g.equivalent(rep, shifted));
      EXPECT_TRUE(same_entries(g.canonical(shifted), rep));
    }
  }
}

TEST(Cohomology, CohClassValidation) {
  auto m = make_lattice<Integer>(mat({{-1, 0}, {0, 1}}));
  EXPECT_THROW(CohClass(m, 1, vec({0, 1})), std::invalid_argument);
  EXPECT_NO_THROW(CohClass(m, 1, vec({1, 0})));
  EXPECT_THROW(CohClass(m, 2, vec({1, 0})), std::invalid_argument);
  EXPECT_THROW(CohClass(m, 3, vec({0, 0})), std::invalid_argument);
  EXPECT_THROW(InvolutiveLattice(mat({{2}})), std::invalid_argument);
  EXPECT_TRUE(cohomologous(CohClass(m, 1, vec({1, 0})), CohClass(m, 1, vec({3, 0}))));
  EXPECT_FALSE(cohomologous(CohClass(m, 1, vec({1, 0})), CohClass(m, 1, vec({2, 0}))));
}

TEST(Cup, ZeroClasses) {
  auto m = make_lattice<Integer>(mat({{-1, 0}, {0, -1}}));
  const auto c = cup_h1_h1(CohClass::zero(m, 1), CohClass::zero(m, 1));
  EXPECT_TRUE(is_trivial(c));
}

TEST(Cup, MinusIdentityBasisPair) {
  auto m = make_lattice<Integer>(mat({{-1, 0}, {0, -1}}));
  const auto c = cup_h1_h1(CohClass(m, 1, vec({1, 0})), CohClass(m, 1, vec({0, 1})));
  EXPECT_TRUE(same_entries(c.rep(), vec({0, -1, 0, 0})));
  EXPECT_FALSE(is_trivial(c));
  const auto w = std::make_shared<const InvolutiveLattice>(exterior_square(*m));
  const auto pushed = pushforward(wedge_quotient<Integer>(2), w, c);
  EXPECT_FALSE(is_trivial(pushed));
}

TEST(Cup, DiagonalVanishesInExteriorSquare) {
  auto m = make_lattice<Integer>(mat({{-1, 0}, {0, -1}}));
  const auto c = cup_h1_h1(CohClass(m, 1, vec({1, 0})), CohClass(m, 1, vec({1, 0})));
  EXPECT_TRUE(same_entries(c.rep(), vec({-1, 0, 0, 0})));
  const auto w = std::make_shared<const InvolutiveLattice>(exterior_square(*m));
  EXPECT_TRUE(all_zero(pushforward(wedge_quotient<Integer>(2), w, c).rep()));

  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = draw(rng, 1, 4);
    auto lat = make_lattice<Integer>(random_involution(rng, n, 3).tau);
    auto wl = std::make_shared<const InvolutiveLattice>(exterior_square(*lat));
    const auto g = h1(*lat);
    for (const auto& coords : g.elements()) {
      CohClass x(lat, 1, g.representative(coords));
      EXPECT_TRUE(is_trivial(pushforward(wedge_quotient<Integer>(n), wl, cup_h1_h1(x, x))));
    }
  }
}

TEST(Cup, Bilinear) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = draw(rng, 1, 4);
    auto lat = make_lattice<Integer>(random_involution(rng, n, 3).tau);
    auto tensor = std::make_shared<const InvolutiveLattice>(tensor_square(*lat));
    const auto g = h1(*lat);
    const auto els = g.elements();
    for (const auto& a : els)
      for (const auto& b : els) {
        CohClass x(lat, 1, g.representative(a)), y(lat, 1, g.representative(b));
        CohClass z(lat, 1, g.representative(els[static_cast<std::size_t>(draw(rng, 0, static_cast<Index>(els.size()) - 1))]));
        EXPECT_TRUE(cohomologous(cup_h1_h1(x + y, z, tensor), cup_h1_h1(x, z, tensor) + cup_h1_h1(y, z, tensor)));
        EXPECT_TRUE(cohomologous(cup_h1_h1(z, x + y, tensor), cup_h1_h1(z, x, tensor) + cup_h1_h1(z, y, tensor)));
      }
  }
}

TEST(Pushforward, IdentityAndZero) {
  auto m = make_lattice<Integer>(mat({{-1, 0}, {0, 1}}));
  CohClass x(m, 1, vec({1, 0}));
  EXPECT_TRUE(cohomologous(pushforward(identity_matrix<Integer>(2), m, x), x));
  EXPECT_TRUE(is_trivial(pushforward(IntMatrix(IntMatrix::Zero(2, 2)), m, x)));
  EXPECT_THROW(EquivariantMap(m, m, mat({{0, 1}, {1, 0}})), std::invalid_argument);
}

TEST(Pushforward, WedgeQuotientOfBasisTensor) {
  const IntMatrix w = wedge_quotient<Integer>(2);
  EXPECT_TRUE(same_entries(IntVector(w * vec({0, 1, 0, 0})), vec({1})));
  EXPECT_TRUE(same_entries(IntVector(w * vec({0, 0, 1, 0})), vec({-1})));
  EXPECT_TRUE(same_entries(IntVector(w * vec({1, 0, 0, 1})), vec({0})));
}

TEST(CupWedge, InjectiveOnRandomLattices) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = draw(rng, 1, 4);
    InvolutiveLattice m(random_involution(rng, n, 3).tau);
    SCOPED_TRACE(trial);
    EXPECT_TRUE(check_cup_wedge_injective(m).injective);
  }
}

TEST(Quotient, TorsionRejected) {
  InvolutiveLattice m(identity_matrix<Integer>(2));
  EXPECT_THROW(quotient(m, mat({{2}, {0}}), "q"), std::domain_error);
  const auto q = quotient(m, mat({{1}, {1}}), "q");
  EXPECT_EQ(q.lattice->rank(), 1);
  EXPECT_TRUE(same_entries(IntMatrix(q.projection * q.section), identity_matrix<Integer>(1)));
}
