// Runs the six acceptance criteria and prints one PASS/FAIL line for each.

#include "nilsect/alb.hpp"
#include "nilsect/corpus.hpp"
#include "nilsect/obstruction.hpp"
#include "nilsect/presets.hpp"
#include "nilsect/smith.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace nilsect;
using namespace nilsect::testing;

namespace {

constexpr double kGoldenLimitSeconds = 1.0;
constexpr double kCorpusLimitSeconds = 30.0;
constexpr Index kCorpusSize = 60;
constexpr Index kMinCorpusSpecs = 50;
constexpr Index kMaxRank = 6;
constexpr std::uint64_t kCorpusSeed = 0;
constexpr int kSmithSamples = 1000;
constexpr Index kSmithMaxSide = 8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  Outcome outcome() const {
    return {pass_, first_failure_.empty() ? notes_.str() : first_failure_ + " (" + notes_.str() + ")"};
  }

 private:
  bool pass_ = true;
  std::string first_failure_;
  std::ostringstream notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

const std::vector<CurveSpec>& corpus() {
  static const std::vector<CurveSpec> specs = [] {
    CorpusOptions opts;
    opts.max_rank = kMaxRank;
    return corpus_generate(kCorpusSeed, kCorpusSize, opts);
  }();
  return specs;
}

Outcome golden_example() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto data = build(presets::single(presets::punctured_line_3(), "p1_minus_3_points"));
  c.require(data.pi0_real.size() == 3, "pi0 has " + std::to_string(data.pi0_real.size()) + " elements");
  const auto first = h1(data.abelianization());
  c.require(first.num_generators() == 2 && first.is_elementary_2(), "H^1 is not (Z/2)^2");

  const auto rep = verify_main_theorem(data);
  std::set<F2Vector> kernel, image;
  for (const auto& row : rep.rows) {
    if (row.in_kernel) kernel.insert(row.h1);
    if (row.realized) image.insert(row.h1);
  }
  c.require(kernel == image && kernel.size() == 3, "Ker delta2 != Image kappa or size != 3");
  c.require(rep.verdict == Verdict::pass, "verdict is " + to_string(rep.verdict));

  const AlbModel m1(data, 1), m2(data, 2);
  const auto fcs = fixed_components_alb1(m1);
  c.require(fcs.size() == 4, "Alb_1 has " + std::to_string(fcs.size()) + " fixed components");
  Index lifting = 0;
  bool corner_ok = false;
  const Rational half(1, 2);
  for (const auto& fc : fcs) {
    for (Index i = 0; i < fc.point.size(); ++i)
      c.require(fc.point(i) == 0 || fc.point(i) == half, "fixed component not at a 2-torsion point");
    const auto r = lifts_to_alb2(m2, fc);
    lifting += r.lifts ? 1 : 0;
    if (fc.point(0) == half && fc.point(1) == half && r.obstruction) {
      RatVector expected(3);
      expected << Rational(0), Rational(0), half;
      corner_ok = *r.obstruction == expected;
    }
  }
  c.require(lifting == 3, std::to_string(lifting) + " components lift");
  c.require(corner_ok, "fiber translation over (1/2,1/2) is not (0,0,1/2)");
  const double dt = seconds_since(t0);
  c.require(dt < kGoldenLimitSeconds, "runtime " + fmt(dt) + "s");
  c.note("pi0=3, |H^1|=4, |Ker|=|Im|=3, 4 fixed, 3 lift, translation (0,0,1/2), " + fmt(dt) + "s < " +
         fmt(kGoldenLimitSeconds) + "s");
  return c.outcome();
}

Outcome route_agreement() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  Index specs = 0, classes = 0, pairs = 0, both_routes = 0;
  for (const auto& spec : corpus()) {
    const auto data = build(spec);
    c.require(data.nil2->rank() <= kMaxRank, spec.name + " exceeds the rank bound");
    const Delta2Calculator calc(data);
    ++specs;
    const auto zark = check_zarkhin_identity(calc);
    c.require(zark.holds, spec.name + ": Zarkhin identity fails");
    pairs += zark.pairs_checked;
    if (!calc.basis_available()) continue;
    ++both_routes;
    for (const auto& coords : calc.h1_group().elements()) {
      const CohClass x(data.abelianization_ptr(), 1, calc.h1_group().representative(coords));
      c.require(calc.h2_coordinates(calc.lift(x)) == calc.h2_coordinates(calc.zarkhin(x)),
                spec.name + ": routes disagree");
      ++classes;
    }
  }
  const double dt = seconds_since(t0);
  c.require(both_routes >= kMinCorpusSpecs, "only " + std::to_string(both_routes) + " specs with both routes");
  c.require(dt < kCorpusLimitSeconds, "runtime " + fmt(dt) + "s");
  c.note(std::to_string(specs) + " specs (" + std::to_string(both_routes) + " with a kappa basis), " +
         std::to_string(classes) + " classes, " + std::to_string(pairs) + " pairs, " + fmt(dt) + "s < " +
         fmt(kCorpusLimitSeconds) + "s");
  return c.outcome();
}

Outcome main_theorem() {
  Criterion c;
  Index eligible = 0, gated = 0;
  for (const auto& spec : corpus()) {
    const auto data = build(spec);
    const auto rep = verify_main_theorem(data);
    if (!data.hypotheses_met) {
      ++gated;
      c.require(rep.verdict == Verdict::hypothesis_not_met, spec.name + ": gate not reported");
      continue;
    }
    ++eligible;
    c.require(rep.verdict == Verdict::pass, spec.name + ": Ker delta2 != Image kappa");
  }
  c.require(eligible >= kMinCorpusSpecs, "only " + std::to_string(eligible) + " eligible specs");
  c.note(std::to_string(eligible) + " specs verified, " + std::to_string(gated) + " gated");
  return c.outcome();
}

Outcome lemma_suite() {
  Criterion c;
  Index lattices = 0, centers = 0, gluings = 0;
  for (const auto& spec : corpus()) {
    const auto data = build(spec);
    for (const InvolutiveLattice* m : {&data.abelianization(), &data.nil2->center()}) {
      if (m->rank() > 4) continue;
      c.require(check_cup_wedge_injective(*m).injective, spec.name + ": cup-wedge map not injective");
      ++lattices;
    }
    c.require(check_pushforward_injective(data).injective, spec.name + ": pushforward not injective");
    ++centers;

    const Index h = h1(data.abelianization()).num_generators();
    CurveSpec pair = spec;
    pair.gluings.push_back(NodeGluing{GlueRelation::identify,
                                      {{0, Orbit::swapped, 0}, {static_cast<Index>(spec.pieces.size()) - 1, Orbit::swapped, 0}}});
    c.require(h1(build(pair).abelianization()).num_generators() == h, spec.name + ": Z[G] gluing changed H^1");
    CurveSpec self = spec;
    self.gluings.push_back(NodeGluing{GlueRelation::conjugate_self, {{0, Orbit::swapped, 0}}});
    c.require(h1(build(self).abelianization()).num_generators() == h + 1, spec.name + ": {x, tau x} gluing");
    gluings += 2;
  }
  c.note(std::to_string(lattices) + " lattices of rank <= 4, " + std::to_string(centers) + " centers, " +
         std::to_string(gluings) + " gluing cases");
  return c.outcome();
}

Outcome reconciliation() {
  Criterion c;
  Index components = 0, lifting = 0;
  for (const auto& spec : corpus()) {
    const auto data = build(spec);
    const AlbModel m1(data, 1), m2(data, 2);
    const auto rc = reconcile_with_delta2(data, m1, m2);
    c.require(rc.count_matches, spec.name + ": fixed component count != |H^1|");
    for (const auto& row : rc.rows) c.require(row.lifts == row.in_kernel, spec.name + ": component disagrees");
    c.require(rc.agrees, spec.name + ": reconciliation failed");
    components += rc.components;
    lifting += rc.lifting;
  }
  c.note(std::to_string(components) + " components, " + std::to_string(lifting) + " lift, all match the kernel");
  return c.outcome();
}

template <typename F>
void for_box(Index dim, int bound, F&& f) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(dim), -bound);
  for (;;) {
    f(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == bound) x[i++] = -bound;
    if (i == x.size()) return;
    ++x[i];
  }
}

Outcome algebra_kernel() {
  using Small = std::int64_t;
  using Group = BasicNil2Group<Small>;
  using Element = BasicNil2Element<Small>;
  Criterion c;
  Index elements = 0, triples = 0;
  for (Index n = 1; n <= 3; ++n) {
    std::vector<Element> images;
    for (Index i = 0; i < n; ++i) images.push_back(Element{-unit_vector<Small>(n, i), Vector<Small>::Zero(pair_count(n))});
    const Group g = Group::free(n, images, "box");
    const Index k = g.center_rank();
    auto make = [&](const std::vector<Small>& x, const std::vector<Small>& z) {
      Element e{Vector<Small>(n), Vector<Small>(k)};
      for (Index i = 0; i < n; ++i) e.v(i) = x[static_cast<std::size_t>(i)];
      for (Index i = 0; i < k; ++i) e.z(i) = z[static_cast<std::size_t>(i)];
      return e;
    };
    bool ok = true;
    for_box(n + k, 2, [&](const std::vector<Small>& x) {
      const Element a = make(x, std::vector<Small>(x.begin() + n, x.end()));
      ok = ok && g.compose(a, g.identity()) == a && g.compose(g.identity(), a) == a &&
           g.compose(a, g.inverse(a)) == g.identity() && g.compose(g.inverse(a), a) == g.identity() &&
           g.apply_tau(g.apply_tau(a)) == a;
      ++elements;
    });
    // z-parts enter products additively, so associativity is decided by the v-parts
    std::vector<Element> box;
    Rng rng(static_cast<std::uint64_t>(n));
    for_box(n, 2, [&](const std::vector<Small>& x) {
      std::vector<Small> z;
      for (Index i = 0; i < k; ++i) z.push_back(draw(rng, -2, 2));
      box.push_back(make(x, z));
    });
    for (const auto& a : box)
      for (const auto& b : box) {
        const Element ab = g.compose(a, b);
        for (const auto& d : box) {
          ok = ok && g.compose(ab, d) == g.compose(a, g.compose(b, d));
          ++triples;
        }
      }
    c.require(ok, "nil2 axioms fail for n=" + std::to_string(n));
  }

  Rng rng(20240601);
  for (int trial = 0; trial < kSmithSamples; ++trial) {
    const Index r = draw(rng, 1, kSmithMaxSide), cols = draw(rng, 1, kSmithMaxSide);
    const IntMatrix a = random_matrix(rng, r, cols, trial % 3 == 0 ? 20 : 3);
    const auto s = smith_normal_form(a);
    bool ok = same_entries(IntMatrix(s.U * a * s.V), s.D) && magnitude(bareiss_determinant(s.U)) == 1 &&
              magnitude(bareiss_determinant(s.V)) == 1;
    for (Index i = 0; i + 1 < s.rank; ++i) ok = ok && s.factor(i + 1) % s.factor(i) == 0;
    c.require(ok, "Smith form check fails on sample " + std::to_string(trial));
  }

  Index lattices = 0;
  Rng trng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = draw(trng, 1, 4);
    const InvolutiveLattice m(random_involution(trng, n, 2).tau);
    const Index o1 = static_cast<Index>(h1(m).order().convert_to<long long>());
    const Index o2 = static_cast<Index>(h2(m).order().convert_to<long long>());
    c.require(o1 == brute_force_order(m.plus_tau(), -m.minus_tau(), 3), "H^1 count differs from enumeration");
    c.require(o2 == brute_force_order(m.minus_tau(), m.plus_tau(), 3), "H^2 count differs from enumeration");
    ++lattices;
  }
  c.note(std::to_string(elements) + " box elements, " + std::to_string(triples) + " triples, " +
         std::to_string(kSmithSamples) + " Smith samples, " + std::to_string(lattices) + " lattices");
  return c.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 golden example P^1 - {0,1,inf}", golden_example},
      {"2 route agreement and Zarkhin identity", route_agreement},
      {"3 main theorem on the corpus", main_theorem},
      {"4 lemma suite", lemma_suite},
      {"5 Alb reconciliation", reconciliation},
      {"6 algebra kernel", algebra_kernel},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
