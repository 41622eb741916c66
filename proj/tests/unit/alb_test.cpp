#include "nilsect/alb.hpp"
#include "nilsect/corpus.hpp"
#include "nilsect/presets.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace nilsect;
using namespace nilsect::testing;

namespace {

CurveSpec bundled(const std::string& name) {
  for (auto& [file, spec] : presets::bundled_specs())
    if (file == name) return spec;
  throw std::runtime_error("no bundled spec " + name);
}

RatVector rat(std::initializer_list<Rational> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

const Rational half(1, 2);

RatVector random_point(Rng& rng, Index d) {
  RatVector p(d);
  for (Index i = 0; i < d; ++i) p(i) = Rational(draw(rng, -12, 12), draw(rng, 1, 6));
  return p;
}

IntVector random_int(Rng& rng, Index d, int bound) {
  IntVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = draw(rng, -bound, bound);
  return v;
}

// The fiber map z -> tau_c z + t has a fixed point on R^c / Z^c iff some quarter-integer z and
// integer m satisfy tau_c z + t = z + m; every such solution set contains z = (t - m) / 2.
bool fiber_has_fixed_point(const IntMatrix& tau_c, const RatVector& t) {
  const Index c = t.size();
  if (c > 6) throw std::domain_error("fiber too large for the brute-force search");
  bool found = false;
  IntVector m = IntVector::Constant(c, Integer(-2));
  for (;;) {
    RatVector z(c);
    for (Index i = 0; i < c; ++i) z(i) = (t(i) - Rational(m(i))) / 2;
    RatVector lhs(c);
    for (Index i = 0; i < c; ++i) {
      lhs(i) = t(i) - z(i) - Rational(m(i));
      for (Index j = 0; j < c; ++j) lhs(i) += Rational(tau_c(i, j)) * z(j);
    }
    bool zero = true;
    for (Index i = 0; i < c; ++i) zero = zero && lhs(i) == 0;
    if (zero) found = true;
    Index i = 0;
    while (i < c && m(i) == 2) m(i++) = -2;
    if (i == c) break;
    m(i) += 1;
  }
  return found;
}

}  // namespace

TEST(Alb, PuncturedLineModels) {
  const auto data = build(bundled("p1_minus_3_points"));
  const AlbModel m1(data, 1), m2(data, 2);
  EXPECT_EQ(m1.dimension(), 2);
  EXPECT_EQ(m2.dimension(), 3);
  EXPECT_EQ(m1.involution().linear, (RatMatrix(2, 2) << -1, 0, 0, -1).finished());
  EXPECT_EQ(m2.involution().linear, (RatMatrix(3, 3) << -1, 0, 0, 0, -1, 0, 0, 0, 1).finished());
  EXPECT_EQ(m2.apply_involution(rat({Rational(1, 3), Rational(2, 7), Rational(5, 11)})),
            rat({Rational(-1, 3), Rational(-2, 7), Rational(5, 11)}));
  // x_2 acts by (a1, a2, a12) -> (a1, a2 + 1, a12 - a1)
  const RatVector p = rat({Rational(1, 3), Rational(1, 5), Rational(1, 7)});
  EXPECT_EQ(m2.act(vec({0, 1}), vec({0}), p), rat({Rational(1, 3), Rational(6, 5), Rational(1, 7) - Rational(1, 3)}));
  EXPECT_EQ(m2.act(vec({1, 0}), vec({0}), p), rat({Rational(4, 3), Rational(1, 5), Rational(1, 7)}));
  EXPECT_EQ(m2.act(vec({0, 0}), vec({1}), p), rat({Rational(1, 3), Rational(1, 5), Rational(8, 7)}));
}

TEST(Alb, PuncturedLineFixedComponents) {
  const auto data = build(bundled("p1_minus_3_points"));
  const AlbModel m1(data, 1), m2(data, 2);
  const auto fcs = fixed_components_alb1(m1);
  ASSERT_EQ(fcs.size(), 4U);
  std::set<std::vector<std::string>> points;
  for (const auto& fc : fcs) points.insert(rational_strings(fc.point));
  EXPECT_EQ(points, (std::set<std::vector<std::string>>{{"0", "0"}, {"1/2", "0"}, {"0", "1/2"}, {"1/2", "1/2"}}));
  for (const auto& fc : fcs) {
    const auto r = lifts_to_alb2(m2, fc);
    const bool corner = fc.point(0) == half && fc.point(1) == half;
    EXPECT_EQ(r.lifts, !corner);
    if (corner) {
      ASSERT_TRUE(r.obstruction.has_value());
      EXPECT_EQ(*r.obstruction, rat({0, 0, half}));
    }
    if (fc.point(0) == 0 && fc.point(1) == 0) {
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_EQ(*r.witness, rat({0, 0, 0}));
    }
  }
  const auto rc = reconcile_with_delta2(data, m1, m2);
  EXPECT_TRUE(rc.agrees);
  EXPECT_EQ(rc.lifting, 3);
  EXPECT_EQ(rc.components, 4);
}

TEST(Alb, TrivialInvolutionHasOneComponent) {
  const auto data = free_data(2, {Nil2Element{vec({1, 0}), vec({0})}, Nil2Element{vec({0, 1}), vec({0})}},
                              {Nil2Element{vec({0, 0}), vec({0})}});
  const AlbModel m1(data, 1);
  EXPECT_EQ(m1.involution().linear, (RatMatrix::Identity(2, 2)).eval());
  const auto fcs = fixed_components_alb1(m1);
  ASSERT_EQ(fcs.size(), 1U);
  EXPECT_EQ(fcs[0].directions.cols(), 2);
}

TEST(Alb, DiagonalInvolutionHasTwoCircles) {
  const auto data = free_data(2, {Nil2Element{vec({1, 0}), vec({0})}, Nil2Element{vec({0, -1}), vec({0})}},
                              {Nil2Element{vec({0, 0}), vec({0})}, Nil2Element{vec({0, 1}), vec({0})}});
  const auto fcs = fixed_components_alb1(AlbModel(data, 1));
  ASSERT_EQ(fcs.size(), 2U);
  std::set<std::string> heights;
  for (const auto& fc : fcs) {
    heights.insert(rational_string(fc.point(1)));
    EXPECT_EQ(fc.directions.cols(), 1);
  }
  EXPECT_EQ(heights, (std::set<std::string>{"0", "1/2"}));
}

TEST(Alb, EllipticComponentsAllLift) {
  const auto data = build(bundled("elliptic_2_ovals"));
  const auto rc = reconcile_with_delta2(data, AlbModel(data, 1), AlbModel(data, 2));
  EXPECT_EQ(rc.components, 2);
  EXPECT_EQ(rc.lifting, 2);
  EXPECT_TRUE(rc.agrees);
}

TEST(Alb, FreeMinusIdentityRankThree) {
  const auto data = free_minus_identity(3);
  const auto rc = reconcile_with_delta2(data, AlbModel(data, 1), AlbModel(data, 2));
  EXPECT_EQ(rc.components, 8);
  EXPECT_EQ(rc.lifting, 4);
  EXPECT_TRUE(rc.agrees);
}

TEST(Alb, InvolutionIsAnEquivariantInvolution) {
  Rng rng(31);
  for (const auto& spec : corpus_generate(41, 20)) {
    const auto data = build(spec);
    const auto& g = *data.nil2;
    const AlbModel m1(data, 1), m2(data, 2);
    SCOPED_TRACE(spec.name);
    for (int t = 0; t < 10; ++t) {
      const RatVector p = random_point(rng, m2.dimension());
      EXPECT_EQ(m2.apply_involution(m2.apply_involution(p)), p);
      EXPECT_EQ(m1.apply_involution(m2.project(p)), m2.project(m2.apply_involution(p)));

      const IntVector gv = random_int(rng, g.rank(), 2), gz = random_int(rng, g.center_rank(), 2);
      const auto image = g.apply_tau(g.compose(g.section(gv), g.central(gz)));
      EXPECT_EQ(m2.apply_involution(m2.act(gv, gz, p)), m2.act(image.v, image.z, m2.apply_involution(p)));
      const auto prod = g.compose(g.section(gv), g.central(gz));
      const IntVector hv = random_int(rng, g.rank(), 2);
      const auto both = g.compose(g.section(hv), prod);
      EXPECT_EQ(m2.act(hv, IntVector::Zero(g.center_rank()), m2.act(gv, gz, p)), m2.act(both.v, both.z, p));
    }
  }
}

TEST(Alb, LiftingMatchesBruteForceAndKernel) {
  CorpusOptions small;
  small.max_rank = 3;
  auto specs = corpus_generate(42, 25);
  const auto low = corpus_generate(44, 25, small);
  specs.insert(specs.end(), low.begin(), low.end());
  Index searched = 0;
  for (const auto& spec : specs) {
    const auto data = build(spec);
    const AlbModel m1(data, 1), m2(data, 2);
    const auto fcs = fixed_components_alb1(m1);
    SCOPED_TRACE(spec.name);
    EXPECT_EQ(static_cast<Index>(fcs.size()), Index{1} << h1(data.abelianization()).num_generators());
    const auto rc = reconcile_with_delta2(data, m1, m2);
    EXPECT_TRUE(rc.agrees);
    if (m2.fiber_rank() > 6) continue;
    for (const auto& fc : fcs) {
      const auto r = lifts_to_alb2(m2, fc);
      EXPECT_EQ(r.lifts, fiber_has_fixed_point(data.nil2->center().tau(), r.fiber_translation));
      ++searched;
    }
  }
  EXPECT_GT(searched, 50);
}

TEST(Alb, PhiHasBoundedDenominators) {
  for (const auto& spec : corpus_generate(43, 20)) {
    const auto data = build(spec);
    const AlbModel m2(data, 2);
    const RatMatrix l = m2.phi_linear();
    for (Index i = 0; i < l.rows(); ++i)
      for (Index j = 0; j < l.cols(); ++j) EXPECT_EQ(2 % boost::multiprecision::denominator(l(i, j)), 0);
  }
}

TEST(Alb, PlotData) {
  const auto data = build(bundled("p1_minus_3_points"));
  const auto j = plot_data(AlbModel(data, 1), AlbModel(data, 2));
  EXPECT_EQ(j["alb1"]["dimension"], 2);
  EXPECT_EQ(j["alb1"]["fundamental_domain"]["vertices"].size(), 4U);
  EXPECT_EQ(j["alb1"]["fixed_components"].size(), 4U);
  EXPECT_EQ(j["alb2"]["fundamental_domain"]["vertices"].size(), 8U);
  EXPECT_EQ(j["alb2"]["fundamental_domain"]["edges"].size(), 12U);
  EXPECT_EQ(j["alb2"]["identifications"].size(), 3U);
  EXPECT_EQ(j["alb2"]["fibers"].size(), 4U);
}
