#include "nilsect/alb.hpp"

#include "nilsect/f2.hpp"

namespace nilsect {

namespace {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) { return to_rational(IntMatrix(v)).col(0); }

bool is_integral(const Rational& q) { return mp::denominator(q) == 1; }

bool is_integral(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

IntVector to_integer(const RatVector& v) {
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    if (!is_integral(v(i))) throw std::logic_error("expected an integral vector");
    out(i) = mp::numerator(v(i));
  }
  return out;
}

Rational frac(const Rational& q) {
  const Integer num = mp::numerator(q), den = mp::denominator(q);
  return Rational(floor_mod(num, den), den);
}

RatVector frac(const RatVector& v) {
  RatVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = frac(v(i));
  return out;
}

bool divides_two(const Rational& q) { return 2 % mp::denominator(q) == 0; }

nlohmann::ordered_json matrix_json(const RatMatrix& m) {
  auto out = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(rational_strings(RatVector(m.row(i).transpose())));
  return out;
}

// Unit cube [0,1]^d: vertices in binary order, edges between vertices differing in one bit.
nlohmann::ordered_json cube_json(Index d) {
  nlohmann::ordered_json out;
  auto vertices = nlohmann::ordered_json::array();
  auto edges = nlohmann::ordered_json::array();
  const std::uint64_t count = std::uint64_t{1} << d;
  for (std::uint64_t m = 0; m < count; ++m) {
    auto v = nlohmann::ordered_json::array();
    for (Index i = 0; i < d; ++i) v.push_back((m >> i) & 1U);
    vertices.push_back(v);
    for (Index i = 0; i < d; ++i)
      if (!((m >> i) & 1U)) edges.push_back({m, m | (std::uint64_t{1} << i)});
  }
  out["vertices"] = vertices;
  out["edges"] = edges;
  return out;
}

}  // namespace

std::string rational_string(const Rational& q) { return to_string(q); }

std::vector<std::string> rational_strings(const RatVector& v) {
  std::vector<std::string> out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(rational_string(v(i)));
  return out;
}

RatVector AffineQuadraticMap::apply(const RatVector& p) const {
  RatVector out = linear * p + translation;
  for (std::size_t k = 0; k < quadratic.size(); ++k) {
    const RatMatrix& b = quadratic[k];
    if (b.size() == 0) continue;
    const RatVector v = p.head(b.rows());
    out(static_cast<Index>(k)) += Rational(1, 2) * v.dot(b * v);
  }
  return out;
}

AlbModel::AlbModel(const EquivariantPi1Data& data, int level)
    : data_(data), level_(level), n_(data.nil2->rank()), c_(data.nil2->center_rank()) {
  if (level != 1 && level != 2) throw std::invalid_argument("Alb level must be 1 or 2");
  const Nil2Group& G = *data.nil2;

  pairing_tensor_ = RatMatrix::Zero(c_, n_ * n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j)
      pairing_tensor_.col(tensor_index(i, j, n_)) =
          to_rational(G.pairing(unit_vector<Integer>(n_, i), unit_vector<Integer>(n_, j)));

  const Index d = dimension();
  involution_.linear = RatMatrix::Zero(d, d);
  involution_.linear.topLeftCorner(n_, n_) = to_rational(G.abelianization().tau());
  involution_.translation = RatVector::Zero(d);
  involution_.quadratic.assign(static_cast<std::size_t>(d), RatMatrix(0, 0));
  if (level_ == 1) return;

  involution_.linear.bottomRightCorner(c_, c_) = to_rational(G.center().tau());
  // phi(v) = z-part of tau(s(v)), recovered by polarization
  auto phi = [&](const IntVector& v) { return to_rational(G.apply_tau(G.section(v)).z); };
  std::vector<RatVector> phi_e;
  for (Index i = 0; i < n_; ++i) phi_e.push_back(phi(unit_vector<Integer>(n_, i)));
  for (Index k = 0; k < c_; ++k) involution_.quadratic[static_cast<std::size_t>(n_ + k)] = RatMatrix::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = i; j < n_; ++j) {
      const IntVector ei = unit_vector<Integer>(n_, i), ej = unit_vector<Integer>(n_, j);
      const RatVector b = phi(IntVector(ei + ej)) - phi_e[static_cast<std::size_t>(i)] - phi_e[static_cast<std::size_t>(j)];
      for (Index k = 0; k < c_; ++k) {
        auto& bk = involution_.quadratic[static_cast<std::size_t>(n_ + k)];
        bk(i, j) = b(k);
        bk(j, i) = b(k);
      }
    }
  for (Index i = 0; i < n_; ++i)
    for (Index k = 0; k < c_; ++k) {
      const auto& bk = involution_.quadratic[static_cast<std::size_t>(n_ + k)];
      const Rational l = phi_e[static_cast<std::size_t>(i)](k) - Rational(1, 2) * bk(i, i);
      involution_.linear(n_ + k, i) = l;
      if (!divides_two(l)) throw std::logic_error("linear part of the involution has a denominator beyond 2");
      for (Index j = 0; j < n_; ++j)
        if (!is_integral(bk(i, j))) throw std::logic_error("quadratic part of the involution is not integral");
    }
}

RatMatrix AlbModel::phi_linear() const {
  if (level_ != 2) return RatMatrix(0, n_);
  return involution_.linear.bottomLeftCorner(c_, n_);
}

RatVector AlbModel::pairing(const RatVector& v, const RatVector& w) const {
  RatVector t(n_ * n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) t(tensor_index(i, j, n_)) = v(i) * w(j);
  return pairing_tensor_ * t;
}

RatVector AlbModel::act(const IntVector& gamma_v, const IntVector& gamma_z, const RatVector& p) const {
  if (gamma_v.size() != n_ || p.size() != dimension()) throw std::invalid_argument("dimension mismatch in lattice action");
  RatVector out = p;
  const RatVector gv = to_rational(gamma_v);
  out.head(n_) += gv;
  if (level_ == 2) {
    if (gamma_z.size() != c_) throw std::invalid_argument("dimension mismatch in lattice action");
    out.tail(c_) += to_rational(gamma_z) + pairing(gv, p.head(n_));
  }
  return out;
}

RatVector AlbModel::act(const IntVector& gamma_v, const RatVector& p) const {
  return act(gamma_v, IntVector::Zero(fiber_rank()), p);
}

AlbModel build_alb(const EquivariantPi1Data& data, int level) { return AlbModel(data, level); }

std::vector<FixedComponent> fixed_components_alb1(const AlbModel& model) {
  if (model.level() != 1) throw std::invalid_argument("fixed components are enumerated on the level-1 model");
  const Index n = model.base_rank();
  if (n > 24) throw std::domain_error("rank too large for the half-integer grid");
  const IntMatrix tau = model.data().abelianization().tau();
  const IntMatrix shift = tau - identity_matrix<Integer>(n);
  const auto shift_smith = smith_normal_form(shift);
  const RatMatrix shift_q = to_rational(shift);
  const RatMatrix directions = to_rational(integer_kernel(shift));

  std::vector<FixedComponent> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    RatVector p(n);
    for (Index i = 0; i < n; ++i) p(i) = (mask >> i) & 1U ? Rational(1, 2) : Rational(0);
    const RatVector moved = shift_q * p;
    if (!is_integral(moved)) continue;
    bool placed = false;
    for (auto& fc : out) {
      const IntVector d = to_integer(RatVector(shift_q * RatVector(p - fc.point)));
      if (solve_integer(shift, d, shift_smith)) {
        fc.grid_points.push_back(p);
        placed = true;
        break;
      }
    }
    if (placed) continue;
    FixedComponent fc{1, p, directions,
                      CohClass(model.data().abelianization_ptr(), 1, IntVector(-to_integer(moved))), {p}};
    out.push_back(std::move(fc));
  }
  return out;
}

LiftResult lifts_to_alb2(const AlbModel& model2, const FixedComponent& fc) {
  if (model2.level() != 2) throw std::invalid_argument("lifting needs the level-2 model");
  const Index n = model2.base_rank(), c = model2.fiber_rank();
  if (fc.point.size() != n) throw std::invalid_argument("component point has the wrong dimension");
  const IntMatrix tau_c = model2.data().nil2->center().tau();

  RatVector base(n + c);
  base.head(n) = fc.point;
  base.tail(c) = RatVector::Zero(c);
  const RatVector image = model2.apply_involution(base);
  const RatVector k_q = RatVector(image.head(n) - fc.point);
  if (!is_integral(k_q)) throw std::invalid_argument("point is not fixed on Alb_1");
  const IntVector k = to_integer(k_q);

  // The involution followed by s(-k) preserves the fiber over the point: z -> tau_c z + t.
  LiftResult out;
  const RatVector back = model2.act(IntVector(-k), IntVector::Zero(c), image);
  out.fiber_translation = back.tail(c);
  const RatVector& t = out.fiber_translation;

  const IntMatrix norm = identity_matrix<Integer>(c) + tau_c;
  const RatVector rhs = -(to_rational(norm) * t);
  std::optional<IntVector> m;
  if (is_integral(rhs)) m = solve_integer(norm, to_integer(rhs));
  if (!m) {
    RatVector ob = RatVector::Zero(n + c);
    ob.tail(c) = frac(t);
    out.obstruction = ob;
    return out;
  }
  RatVector w(n + c);
  w.head(n) = fc.point;
  w.tail(c) = frac(RatVector((t + to_rational(*m)) / Rational(2)));

  const RatVector check = model2.act(IntVector(-k), IntVector::Zero(c), model2.apply_involution(w)) - w;
  if (!all_zero(check.head(n)) || !is_integral(RatVector(check.tail(c))))
    throw std::logic_error("fiber witness is not fixed");
  out.lifts = true;
  out.witness = w;
  return out;
}

ReconcileReport reconcile_with_delta2(const EquivariantPi1Data& data, const AlbModel& model1, const AlbModel& model2) {
  ReconcileReport rep;
  Delta2Calculator calc(data);
  const auto comps = fixed_components_alb1(model1);
  rep.components = static_cast<Index>(comps.size());
  rep.h1_order = Index(1) << calc.h1_group().num_generators();
  rep.count_matches = rep.components == rep.h1_order;
  rep.agrees = rep.count_matches;
  for (const auto& fc : comps) {
    ReconcileRow row;
    row.point = fc.point;
    row.h1 = calc.h1_coordinates(fc.h1);
    row.lift = lifts_to_alb2(model2, fc);
    row.lifts = row.lift.lifts;
    row.in_kernel = f2::is_zero(calc.h2_coordinates(calc.lift(fc.h1)));
    if (row.lifts) ++rep.lifting;
    if (row.lifts != row.in_kernel) rep.agrees = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

nlohmann::ordered_json plot_data(const AlbModel& model1, const AlbModel& model2) {
  using json = nlohmann::ordered_json;
  const Index n = model1.base_rank();
  const Index c = model2.fiber_rank();
  json out;

  json l1;
  l1["dimension"] = n;
  if (n <= 3) l1["fundamental_domain"] = cube_json(n);
  l1["involution"] = {{"linear", matrix_json(model1.involution().linear)}};
  json fixed = json::array();
  const auto comps = fixed_components_alb1(model1);
  for (const auto& fc : comps) {
    json item;
    item["point"] = rational_strings(fc.point);
    json dirs = json::array();
    for (Index j = 0; j < fc.directions.cols(); ++j) dirs.push_back(rational_strings(RatVector(fc.directions.col(j))));
    item["directions"] = dirs;
    fixed.push_back(item);
  }
  l1["fixed_components"] = fixed;
  out["alb1"] = l1;

  json l2;
  l2["dimension"] = n + c;
  if (n + c <= 3) l2["fundamental_domain"] = cube_json(n + c);
  json ids = json::array();
  for (Index i = 0; i < n; ++i) {
    // x_i acts affinely: v -> v + e_i, z -> z + <e_i, v>
    RatMatrix lin = RatMatrix::Identity(n + c, n + c);
    const RatVector e = to_rational(unit_vector<Integer>(n, i));
    for (Index j = 0; j < n; ++j) lin.block(n, j, c, 1) = model2.pairing(e, to_rational(unit_vector<Integer>(n, j)));
    RatVector shift = RatVector::Zero(n + c);
    shift(i) = 1;
    ids.push_back({{"generator", "x" + std::to_string(i + 1)}, {"linear", matrix_json(lin)},
                   {"translation", rational_strings(shift)}});
  }
  for (Index k = 0; k < c; ++k) {
    RatVector shift = RatVector::Zero(n + c);
    shift(n + k) = 1;
    ids.push_back({{"generator", "z" + std::to_string(k + 1)},
                   {"linear", matrix_json(RatMatrix::Identity(n + c, n + c))},
                   {"translation", rational_strings(shift)}});
  }
  l2["identifications"] = ids;
  json quad = json::array();
  for (Index k = 0; k < c; ++k) quad.push_back(matrix_json(model2.quadratic_part()[static_cast<std::size_t>(n + k)]));
  l2["involution"] = {{"linear", matrix_json(model2.involution().linear)}, {"quadratic", quad}};
  json fibers = json::array();
  for (const auto& fc : comps) {
    const auto lr = lifts_to_alb2(model2, fc);
    json item;
    item["base_point"] = rational_strings(fc.point);
    item["lifts"] = lr.lifts;
    item["fiber_translation"] = rational_strings(lr.fiber_translation);
    if (lr.witness) item["witness"] = rational_strings(*lr.witness);
    if (lr.obstruction) item["obstruction"] = rational_strings(*lr.obstruction);
    fibers.push_back(item);
  }
  l2["fibers"] = fibers;
  out["alb2"] = l2;
  return out;
}

}  // namespace nilsect
