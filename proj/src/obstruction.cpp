#include "nilsect/obstruction.hpp"

#include "nilsect/f2.hpp"
#include "nilsect/random.hpp"

namespace nilsect {

namespace {

std::uint64_t to_mask(const F2Vector& bits) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) m |= std::uint64_t{1} << i;
  return m;
}

F2Vector from_mask(std::uint64_t m, std::size_t width) {
  F2Vector bits(width, 0);
  for (std::size_t i = 0; i < width; ++i) bits[i] = (m >> i) & 1U;
  return bits;
}

}  // namespace

Delta2Calculator::Delta2Calculator(const EquivariantPi1Data& data)
    : data_(data), h1_(h1(data.abelianization())), h2_(h2(data.nil2->center())) {
  const Nil2Group& G = *data.nil2;
  const Index n = G.rank();
  pairing_tensor_ = G.commutator_map() * wedge_quotient<Integer>(n);
  tensor_ = make_lattice<Integer>(kronecker_square(data.abelianization().tau()), "ab(x)ab");
  pushforward_map_.emplace(tensor_, G.center_ptr(), pairing_tensor_);
  norm_smith_ = smith_normal_form(G.center().plus_tau());

  const auto adj = verify_unit_adjunction(data);
  if (adj.passed()) {
    std::vector<F2Vector> cols;
    for (std::size_t i = 0; i < adj.kappa_coordinates.size(); ++i)
      if (static_cast<Index>(i) != data.pi0_real.base) {
        cols.push_back(adj.kappa_coordinates[i]);
        basis_component_.push_back(i);
      }
    basis_ = std::move(cols);
  }
}

CohClass Delta2Calculator::lift(const IntVector& rep, const IntVector& central_shift) const {
  const Nil2Group& G = group();
  if (rep.size() != G.rank()) throw std::invalid_argument("representative has the wrong length");
  if (!all_zero(IntVector(data_.abelianization().plus_tau() * rep)))
    throw std::invalid_argument("cocycle condition violated: (1 + tau) rep != 0");
  const Nil2Element g = G.compose(G.section(rep), G.central(central_shift));
  const Nil2Element c = G.compose(g, G.apply_tau(g));
  if (!all_zero(c.v)) throw std::logic_error("lifted cocycle has a non-central value");
  return CohClass(G.center_ptr(), 2, c.z);
}

CohClass Delta2Calculator::lift(const IntVector& rep) const {
  return lift(rep, IntVector::Zero(group().center_rank()));
}

CohClass Delta2Calculator::lift(const CohClass& x) const {
  if (x.degree() != 1 || !(x.ambient() == data_.abelianization()))
    throw std::invalid_argument("delta_2 expects a degree-1 class on the abelianization");
  return lift(x.rep());
}

CohClass Delta2Calculator::cup_pushforward(const IntVector& x, const IntVector& y) const {
  IntVector rep = pairing_tensor_ * cup_representative(data_.abelianization().tau(), x, y);
  return CohClass(group().center_ptr(), 2, rep);
}

CohClass Delta2Calculator::cup_pushforward(const CohClass& x, const CohClass& y) const {
  return pushforward(*pushforward_map_, cup_h1_h1(x, y, tensor_));
}

CohClass Delta2Calculator::zarkhin(const CohClass& x) const {
  if (!basis_) throw BasisUnavailable("kappa classes do not form a basis of H^1; only the lift route is available");
  if (x.degree() != 1 || !(x.ambient() == data_.abelianization()))
    throw std::invalid_argument("delta_2 expects a degree-1 class on the abelianization");
  auto coeffs = f2::solve(*basis_, h1_.f2_coordinates(x.rep()));
  if (!coeffs) throw std::logic_error("basis does not span H^1");
  std::vector<const CohClass*> terms;
  for (std::size_t i = 0; i < coeffs->size(); ++i)
    if ((*coeffs)[i]) terms.push_back(&data_.kappa_classes[basis_component_[i]]);
  CohClass out = CohClass::zero(group().center_ptr(), 2);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) out = out + cup_pushforward(*terms[i], *terms[j]);
  return out;
}

bool Delta2Calculator::solvable(const CohClass& obstruction) const {
  const Matrix<Integer> norm = group().center().plus_tau();
  return solve_integer(norm, IntVector(-obstruction.rep()), norm_smith_).has_value();
}

CohClass Delta2Calculator::h1_class(const F2Vector& coords) const {
  return CohClass(data_.abelianization_ptr(), 1, h1_.from_f2(coords));
}

CohClass delta2_lift(const EquivariantPi1Data& data, const CohClass& x) { return Delta2Calculator(data).lift(x); }

CohClass delta2_zarkhin(const EquivariantPi1Data& data, const CohClass& x) {
  return Delta2Calculator(data).zarkhin(x);
}

std::vector<CohClass> kernel_delta2(const EquivariantPi1Data& data) {
  Delta2Calculator calc(data);
  std::vector<CohClass> out;
  for (const auto& coords : calc.h1_group().elements()) {
    CohClass x(data.abelianization_ptr(), 1, calc.h1_group().representative(coords));
    if (f2::is_zero(calc.h2_coordinates(calc.lift(x)))) out.push_back(x);
  }
  return out;
}

ObstructionReport verify_main_theorem(const EquivariantPi1Data& data) {
  Delta2Calculator calc(data);
  ObstructionReport rep;
  rep.h1_dimension = calc.h1_group().num_generators();
  rep.h2_dimension = calc.h2_center().num_generators();
  rep.zarkhin_available = calc.basis_available();

  std::vector<F2Vector> kappa;
  for (const auto& k : data.kappa_classes) kappa.push_back(calc.h1_coordinates(k));

  bool sets_equal = true;
  for (const auto& coords : calc.h1_group().elements()) {
    ObstructionRow row;
    CohClass x(data.abelianization_ptr(), 1, calc.h1_group().representative(coords));
    row.h1 = calc.h1_coordinates(x);
    row.representative = x.rep();
    row.delta2_lift = calc.h2_coordinates(calc.lift(x));
    if (rep.zarkhin_available) {
      row.delta2_zarkhin = calc.h2_coordinates(calc.zarkhin(x));
      if (*row.delta2_zarkhin != row.delta2_lift) rep.routes_agree = false;
    }
    row.in_kernel = f2::is_zero(row.delta2_lift);
    for (std::size_t i = 0; i < kappa.size(); ++i)
      if (kappa[i] == row.h1) {
        row.realized = true;
        row.components.push_back(data.pi0_real.labels[i]);
      }
    if (row.in_kernel) ++rep.kernel_size;
    if (row.realized) ++rep.image_size;
    if (row.in_kernel != row.realized) sets_equal = false;
    rep.rows.push_back(std::move(row));
  }
  if (!data.hypotheses_met)
    rep.verdict = Verdict::hypothesis_not_met;
  else
    rep.verdict = sets_equal ? Verdict::pass : Verdict::fail;
  return rep;
}

PushforwardInjectivity check_pushforward_injective(const EquivariantPi1Data& data) {
  const Nil2Group& G = *data.nil2;
  auto wedge = std::make_shared<const InvolutiveLattice>(exterior_square(data.abelianization()));
  EquivariantMap bracket(wedge, G.center_ptr(), G.commutator_map());
  const FinAbGroup source = h2(*wedge);
  const FinAbGroup target = h2(G.center());

  PushforwardInjectivity out;
  out.source_dimension = source.num_generators();
  std::vector<F2Vector> images;
  for (Index i = 0; i < source.num_generators(); ++i) {
    CohClass c(wedge, 2, source.generator(i));
    images.push_back(target.f2_coordinates(pushforward(bracket, c).rep()));
  }
  const std::size_t k = images.size();
  if (k > 24) {
    // too many elements to list; an F_2 rank count decides the same question
    out.elements_checked = 0;
    out.injective = f2::rank(images) == k;
    return out;
  }
  const std::size_t width = static_cast<std::size_t>(target.num_generators());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    F2Vector acc(width, 0);
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U)
        for (std::size_t b = 0; b < width; ++b) acc[b] ^= images[i][b];
    ++out.elements_checked;
    if (f2::is_zero(acc)) {
      out.injective = false;
      out.witness = from_mask(mask, k);
      return out;
    }
  }
  return out;
}

bool pushforward_injective(const EquivariantPi1Data& data) { return check_pushforward_injective(data).injective; }

ZarkhinIdentityCheck check_zarkhin_identity(const Delta2Calculator& calc) {
  ZarkhinIdentityCheck out;
  const auto& first = calc.h1_group();
  const std::size_t width = static_cast<std::size_t>(first.num_generators());
  if (width >= 24) throw std::domain_error("H^1 too large for the all-pairs check");

  const auto elements = first.elements();
  std::vector<IntVector> reps;
  std::vector<F2Vector> delta(std::size_t{1} << width);
  std::vector<std::uint64_t> masks;
  for (const auto& coords : elements) {
    IntVector r = first.representative(coords);
    F2Vector bits = first.f2_coordinates(r);
    const auto m = to_mask(bits);
    delta[m] = calc.h2_coordinates(calc.lift(r));
    reps.push_back(std::move(r));
    masks.push_back(m);
  }
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      F2Vector lhs = f2::add(f2::add(delta[masks[a] ^ masks[b]], delta[masks[a]]), delta[masks[b]]);
      F2Vector rhs = calc.h2_coordinates(calc.cup_pushforward(reps[a], reps[b]));
      ++out.pairs_checked;
      if (lhs != rhs) {
        out.holds = false;
        if (!out.counterexample) out.counterexample.emplace(from_mask(masks[a], width), from_mask(masks[b], width));
      }
    }
  return out;
}

IndependenceCheck check_representative_independence(const Delta2Calculator& calc, std::uint64_t seed,
                                                    Index shifts_per_class) {
  IndependenceCheck out;
  Rng rng(seed);
  const auto& first = calc.h1_group();
  const IntMatrix boundary = -calc.data().abelianization().minus_tau();
  const Index n = calc.group().rank();
  const Index c = calc.group().center_rank();
  for (const auto& coords : first.elements()) {
    const IntVector rep = first.representative(coords);
    const F2Vector expected = calc.h2_coordinates(calc.lift(rep));
    for (Index s = 0; s < shifts_per_class; ++s) {
      IntVector w(n), z(c);
      for (Index i = 0; i < n; ++i) w(i) = Integer(draw(rng, -3, 3));
      for (Index i = 0; i < c; ++i) z(i) = Integer(draw(rng, -3, 3));
      IntVector shifted = rep + boundary * w;
      ++out.samples;
      if (calc.h2_coordinates(calc.lift(shifted, z)) != expected) out.holds = false;
    }
  }
  return out;
}

bool check_solvability_oracle(const Delta2Calculator& calc) {
  for (const auto& coords : calc.h1_group().elements()) {
    const CohClass d = calc.lift(calc.h1_group().representative(coords));
    if (f2::is_zero(calc.h2_coordinates(d)) != calc.solvable(d)) return false;
  }
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::hypothesis_not_met:
      return "hypothesis not met";
  }
  return "fail";
}

}  // namespace nilsect
