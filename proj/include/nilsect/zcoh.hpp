#pragma once

// Z/2 group cohomology of free lattices with an involution.
//
// For G = Z/2 = <tau> acting on a free module M the cyclic resolution gives
//   H^1(G, M) = Ker(1 + tau) / Im(tau - 1)
//   H^2(G, M) = Tate H^0(G, M) = Ker(1 - tau) / Im(1 + tau)
// and everything below is computed from these closed formulas with Smith forms.

#include "nilsect/smith.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilsect {

template <typename Scalar>
class BasicInvolutiveLattice {
 public:
  BasicInvolutiveLattice() = default;

  explicit BasicInvolutiveLattice(Matrix<Scalar> tau, std::string label = {})
      : tau_(std::move(tau)), label_(std::move(label)) {
    if (tau_.rows() != tau_.cols())
      throw std::invalid_argument("involution matrix of '" + label_ + "' is not square");
    if (!same_entries(Matrix<Scalar>(tau_ * tau_), identity_matrix<Scalar>(tau_.rows())))
      throw std::invalid_argument("matrix of '" + label_ + "' does not square to the identity");
  }

  Index rank() const { return tau_.rows(); }
  const Matrix<Scalar>& tau() const { return tau_; }
  const std::string& label() const { return label_; }

  Matrix<Scalar> plus_tau() const { return identity_matrix<Scalar>(rank()) + tau_; }
  Matrix<Scalar> minus_tau() const { return identity_matrix<Scalar>(rank()) - tau_; }

  friend bool operator==(const BasicInvolutiveLattice& a, const BasicInvolutiveLattice& b) {
    return same_entries(a.tau_, b.tau_);
  }

 private:
  Matrix<Scalar> tau_ = Matrix<Scalar>(0, 0);
  std::string label_;
};

template <typename Scalar>
using LatticePtr = std::shared_ptr<const BasicInvolutiveLattice<Scalar>>;

template <typename Scalar>
LatticePtr<Scalar> make_lattice(Matrix<Scalar> tau, std::string label = {}) {
  return std::make_shared<const BasicInvolutiveLattice<Scalar>>(std::move(tau), std::move(label));
}

/// Subquotient Ker(A) / Im(B) of Z^n, in Smith-canonical coordinates.
///
/// Generators are representative vectors; coordinates of a kernel vector are
/// reduced into [0, d_i). Invariant factors equal to 1 are dropped, and
/// zero factors (free summands) are kept as 0.
template <typename Scalar>
class BasicFinAbGroup {
 public:
  static BasicFinAbGroup subquotient(const Matrix<Scalar>& kernel_of, const Matrix<Scalar>& image_of) {
    if (kernel_of.cols() != image_of.rows())
      throw std::invalid_argument("subquotient: shape mismatch");
    if (!all_zero(Matrix<Scalar>(kernel_of * image_of)))
      throw std::invalid_argument("subquotient: image is not contained in the kernel");

    BasicFinAbGroup g;
    g.kernel_of_ = kernel_of;
    const Index n = kernel_of.cols();
    auto ks = smith_normal_form(kernel_of);
    const Index k = n - ks.rank;
    Matrix<Scalar> basis = ks.V.rightCols(k);
    Matrix<Scalar> to_basis = ks.V_inv.bottomRows(k);

    Matrix<Scalar> rel = to_basis * image_of;
    auto rs = smith_normal_form(rel);
    for (Index i = 0; i < k; ++i) {
      Scalar d = i < rs.rank ? rs.factor(i) : Scalar(0);
      if (d == Scalar(1)) continue;
      Vector<Scalar> gen = basis * rs.U_inv.col(i);
      Vector<Scalar> row = (rs.U.row(i) * to_basis).transpose();
      // first nonzero entry positive
      for (Index j = 0; j < gen.size(); ++j) {
        if (gen(j) == Scalar(0)) continue;
        if (gen(j) < Scalar(0)) {
          gen = -gen;
          row = -row;
        }
        break;
      }
      g.factors_.push_back(d);
      g.generator_cols_.push_back(std::move(gen));
      g.coordinate_rows_.push_back(std::move(row));
    }
    return g;
  }

  Index ambient_rank() const { return kernel_of_.cols(); }
  Index num_generators() const { return static_cast<Index>(factors_.size()); }
  const std::vector<Scalar>& invariant_factors() const { return factors_; }

  Index free_rank() const {
    Index r = 0;
    for (const auto& d : factors_)
      if (d == Scalar(0)) ++r;
    return r;
  }

  bool is_finite() const { return free_rank() == 0; }

  /// |G| as a count; throws for infinite groups.
  Scalar order() const {
    if (!is_finite()) throw std::domain_error("order of an infinite group");
    Scalar o(1);
    for (const auto& d : factors_) o *= d;
    return o;
  }

  const Vector<Scalar>& generator(Index i) const { return generator_cols_.at(i); }

  Matrix<Scalar> generators() const {
    Matrix<Scalar> m(ambient_rank(), num_generators());
    for (Index i = 0; i < num_generators(); ++i) m.col(i) = generator_cols_[i];
    return m;
  }

  bool contains(const Vector<Scalar>& x) const {
    return x.size() == ambient_rank() && all_zero(Vector<Scalar>(kernel_of_ * x));
  }

  Vector<Scalar> coordinates(const Vector<Scalar>& x) const {
    if (!contains(x)) throw std::invalid_argument("vector is not a cocycle for this group");
    Vector<Scalar> c(num_generators());
    for (Index i = 0; i < num_generators(); ++i) {
      Scalar raw = coordinate_rows_[i].dot(x);
      c(i) = factors_[i] == Scalar(0) ? raw : floor_mod(raw, factors_[i]);
    }
    return c;
  }

  bool is_trivial(const Vector<Scalar>& x) const { return all_zero(coordinates(x)); }

  bool equivalent(const Vector<Scalar>& x, const Vector<Scalar>& y) const {
    return same_entries(coordinates(x), coordinates(y));
  }

  Vector<Scalar> representative(const Vector<Scalar>& coords) const {
    Vector<Scalar> r = Vector<Scalar>::Zero(ambient_rank());
    for (Index i = 0; i < num_generators(); ++i) r += coords(i) * generator_cols_[i];
    return r;
  }

  Vector<Scalar> canonical(const Vector<Scalar>& x) const { return representative(coordinates(x)); }

  /// Coordinates mod 2, for groups that are F_2 vector spaces.
  F2Vector f2_coordinates(const Vector<Scalar>& x) const {
    require_elementary_2();
    Vector<Scalar> c = coordinates(x);
    F2Vector out(static_cast<std::size_t>(c.size()));
    for (Index i = 0; i < c.size(); ++i) out[static_cast<std::size_t>(i)] = c(i) == Scalar(0) ? 0 : 1;
    return out;
  }

  Vector<Scalar> from_f2(const F2Vector& bits) const {
    Vector<Scalar> c(num_generators());
    for (Index i = 0; i < num_generators(); ++i) c(i) = Scalar(bits.at(static_cast<std::size_t>(i)));
    return representative(c);
  }

  bool is_elementary_2() const {
    for (const auto& d : factors_)
      if (d != Scalar(2)) return false;
    return true;
  }

  /// All coordinate tuples, in lexicographic order (finite groups only).
  std::vector<Vector<Scalar>> elements() const {
    if (!is_finite()) throw std::domain_error("cannot enumerate an infinite group");
    std::vector<Vector<Scalar>> out;
    Vector<Scalar> c = Vector<Scalar>::Zero(num_generators());
    for (;;) {
      out.push_back(c);
      Index i = num_generators() - 1;
      for (; i >= 0; --i) {
        c(i) += Scalar(1);
        if (c(i) < factors_[static_cast<std::size_t>(i)]) break;
        c(i) = Scalar(0);
      }
      if (i < 0) break;
    }
    return out;
  }

 private:
  void require_elementary_2() const {
    if (!is_elementary_2()) throw std::domain_error("group is not an F_2 vector space");
  }

  Matrix<Scalar> kernel_of_ = Matrix<Scalar>(0, 0);
  std::vector<Scalar> factors_;
  std::vector<Vector<Scalar>> generator_cols_;
  std::vector<Vector<Scalar>> coordinate_rows_;
};

template <typename Scalar>
BasicFinAbGroup<Scalar> h1(const BasicInvolutiveLattice<Scalar>& m) {
  return BasicFinAbGroup<Scalar>::subquotient(m.plus_tau(), Matrix<Scalar>(-m.minus_tau()));
}

template <typename Scalar>
BasicFinAbGroup<Scalar> h2(const BasicInvolutiveLattice<Scalar>& m) {
  return BasicFinAbGroup<Scalar>::subquotient(m.minus_tau(), m.plus_tau());
}

/// Tate H^0 = M^G / (1 + tau) M, which for Z/2 coincides with H^2.
template <typename Scalar>
BasicFinAbGroup<Scalar> tate_h0(const BasicInvolutiveLattice<Scalar>& m) {
  return h2(m);
}

template <typename Scalar>
BasicFinAbGroup<Scalar> cohomology(const BasicInvolutiveLattice<Scalar>& m, int degree) {
  if (degree == 1) return h1(m);
  if (degree == 2) return h2(m);
  throw std::invalid_argument("only degrees 1 and 2 are supported");
}

/// Cocycle representative of a class in H^1 or H^2 of Z/2 with coefficients in a lattice.
template <typename Scalar>
class BasicCohClass {
 public:
  BasicCohClass(LatticePtr<Scalar> ambient, int degree, Vector<Scalar> rep)
      : ambient_(std::move(ambient)), degree_(degree), rep_(std::move(rep)) {
    if (!ambient_) throw std::invalid_argument("cohomology class without ambient lattice");
    if (degree_ != 1 && degree_ != 2) throw std::invalid_argument("degree must be 1 or 2");
    if (rep_.size() != ambient_->rank())
      throw std::invalid_argument("representative length does not match lattice rank");
    const Matrix<Scalar> cond = degree_ == 1 ? ambient_->plus_tau() : ambient_->minus_tau();
    if (!all_zero(Vector<Scalar>(cond * rep_)))
      throw std::invalid_argument(degree_ == 1 ? "representative violates (1 + tau) c = 0"
                                               : "representative is not tau-fixed");
  }

  static BasicCohClass zero(LatticePtr<Scalar> ambient, int degree) {
    const Index n = ambient->rank();
    return BasicCohClass(std::move(ambient), degree, Vector<Scalar>::Zero(n));
  }

  int degree() const { return degree_; }
  const Vector<Scalar>& rep() const { return rep_; }
  const BasicInvolutiveLattice<Scalar>& ambient() const { return *ambient_; }
  const LatticePtr<Scalar>& ambient_ptr() const { return ambient_; }

  BasicCohClass operator+(const BasicCohClass& other) const {
    require_compatible(other);
    return BasicCohClass(ambient_, degree_, Vector<Scalar>(rep_ + other.rep_));
  }

  BasicCohClass operator-(const BasicCohClass& other) const {
    require_compatible(other);
    return BasicCohClass(ambient_, degree_, Vector<Scalar>(rep_ - other.rep_));
  }

  BasicCohClass operator-() const { return BasicCohClass(ambient_, degree_, Vector<Scalar>(-rep_)); }

  void require_compatible(const BasicCohClass& other) const {
    if (degree_ != other.degree_) throw std::invalid_argument("degree mismatch");
    if (ambient_ != other.ambient_ && !(*ambient_ == *other.ambient_))
      throw std::invalid_argument("ambient lattice mismatch");
  }

 private:
  LatticePtr<Scalar> ambient_;
  int degree_ = 1;
  Vector<Scalar> rep_;
};

/// Coboundary test by direct integer solvability, independent of BasicFinAbGroup.
template <typename Scalar>
bool cohomologous(const BasicCohClass<Scalar>& a, const BasicCohClass<Scalar>& b) {
  a.require_compatible(b);
  const auto& m = a.ambient();
  Matrix<Scalar> boundary = a.degree() == 1 ? Matrix<Scalar>(-m.minus_tau()) : m.plus_tau();
  return in_integer_span(boundary, Vector<Scalar>(a.rep() - b.rep()));
}

template <typename Scalar>
bool is_trivial(const BasicCohClass<Scalar>& c) {
  return cohomologous(c, BasicCohClass<Scalar>::zero(c.ambient_ptr(), c.degree()));
}

/// Kronecker square of a matrix in the row-major e_i (x) e_j basis.
template <typename Scalar>
Matrix<Scalar> kronecker_square(const Matrix<Scalar>& a) {
  const Index r = a.rows(), c = a.cols();
  Matrix<Scalar> out(r * r, c * c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      for (Index k = 0; k < r; ++k)
        for (Index l = 0; l < c; ++l) out(i * r + k, j * c + l) = a(i, j) * a(k, l);
  return out;
}

template <typename Scalar>
Vector<Scalar> tensor_product(const Vector<Scalar>& x, const Vector<Scalar>& y) {
  Vector<Scalar> out(x.size() * y.size());
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < y.size(); ++j) out(i * y.size() + j) = x(i) * y(j);
  return out;
}

/// Induced map on the exterior square, basis e_i ^ e_j (i < j) in lexicographic order.
template <typename Scalar>
Matrix<Scalar> exterior_square_map(const Matrix<Scalar>& a) {
  const Index n = a.cols(), m = a.rows();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(pair_count(m), pair_count(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = k + 1; l < m; ++l)
          out(wedge_index(k, l, m), wedge_index(i, j, n)) = a(k, i) * a(l, j) - a(l, i) * a(k, j);
  return out;
}

/// Quotient map M (x) M -> M ^ M, e_i (x) e_j -> e_i ^ e_j.
template <typename Scalar>
Matrix<Scalar> wedge_quotient(Index n) {
  Matrix<Scalar> w = Matrix<Scalar>::Zero(pair_count(n), n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i < j) w(wedge_index(i, j, n), tensor_index(i, j, n)) = Scalar(1);
      if (i > j) w(wedge_index(j, i, n), tensor_index(i, j, n)) = Scalar(-1);
    }
  return w;
}

/// x ^ y in the exterior square basis.
template <typename Scalar>
Vector<Scalar> wedge_product(const Vector<Scalar>& x, const Vector<Scalar>& y) {
  const Index n = x.size();
  Vector<Scalar> out = Vector<Scalar>::Zero(pair_count(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out(wedge_index(i, j, n)) = x(i) * y(j) - x(j) * y(i);
  return out;
}

template <typename Scalar>
BasicInvolutiveLattice<Scalar> tensor_square(const BasicInvolutiveLattice<Scalar>& m) {
  return BasicInvolutiveLattice<Scalar>(kronecker_square(m.tau()), m.label() + "(x)" + m.label());
}

template <typename Scalar>
BasicInvolutiveLattice<Scalar> exterior_square(const BasicInvolutiveLattice<Scalar>& m) {
  return BasicInvolutiveLattice<Scalar>(exterior_square_map(m.tau()), m.label() + "^" + m.label());
}

/// An integer matrix f : M -> N with f tau_M = tau_N f, checked once at construction.
template <typename Scalar>
class BasicEquivariantMap {
 public:
  BasicEquivariantMap(LatticePtr<Scalar> source, LatticePtr<Scalar> target, Matrix<Scalar> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_->rank() || matrix_.cols() != source_->rank())
      throw std::invalid_argument("map shape does not match source/target ranks");
    if (!same_entries(Matrix<Scalar>(matrix_ * source_->tau()), Matrix<Scalar>(target_->tau() * matrix_)))
      throw std::invalid_argument("map is not equivariant");
  }

  const BasicInvolutiveLattice<Scalar>& source() const { return *source_; }
  const LatticePtr<Scalar>& target_ptr() const { return target_; }
  const Matrix<Scalar>& matrix() const { return matrix_; }

 private:
  LatticePtr<Scalar> source_, target_;
  Matrix<Scalar> matrix_;
};

template <typename Scalar>
BasicCohClass<Scalar> pushforward(const BasicEquivariantMap<Scalar>& f, const BasicCohClass<Scalar>& c) {
  if (!(c.ambient() == f.source())) throw std::invalid_argument("class does not live on the map's source");
  return BasicCohClass<Scalar>(f.target_ptr(), c.degree(), Vector<Scalar>(f.matrix() * c.rep()));
}

template <typename Scalar>
BasicCohClass<Scalar> pushforward(const Matrix<Scalar>& f, LatticePtr<Scalar> target, const BasicCohClass<Scalar>& c) {
  return pushforward(BasicEquivariantMap<Scalar>(c.ambient_ptr(), std::move(target), f), c);
}

/// Representative rep(x) (x) tau rep(y) of the cup product H^1 x H^1 -> H^2(M (x) M).
template <typename Scalar>
Vector<Scalar> cup_representative(const Matrix<Scalar>& tau, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  return tensor_product(x, Vector<Scalar>(tau * y));
}

template <typename Scalar>
BasicCohClass<Scalar> cup_h1_h1(const BasicCohClass<Scalar>& x, const BasicCohClass<Scalar>& y,
                                LatticePtr<Scalar> tensor_ambient) {
  x.require_compatible(y);
  if (x.degree() != 1) throw std::invalid_argument("cup_h1_h1 expects degree-1 classes");
  if (tensor_ambient->rank() != x.ambient().rank() * x.ambient().rank())
    throw std::invalid_argument("tensor lattice has the wrong rank");
  return BasicCohClass<Scalar>(std::move(tensor_ambient), 2,
                               cup_representative(x.ambient().tau(), x.rep(), y.rep()));
}

template <typename Scalar>
BasicCohClass<Scalar> cup_h1_h1(const BasicCohClass<Scalar>& x, const BasicCohClass<Scalar>& y) {
  return cup_h1_h1(x, y, std::make_shared<const BasicInvolutiveLattice<Scalar>>(tensor_square(x.ambient())));
}

/// Quotient of an involutive lattice by a tau-stable sublattice, which must be saturated.
template <typename Scalar>
struct BasicLatticeQuotient {
  LatticePtr<Scalar> lattice;
  Matrix<Scalar> projection;  // rank(quotient) x rank(M)
  Matrix<Scalar> section;     // rank(M) x rank(quotient), projection * section = I
};

template <typename Scalar>
BasicLatticeQuotient<Scalar> quotient(const BasicInvolutiveLattice<Scalar>& m, const Matrix<Scalar>& relations,
                                      std::string label) {
  const Index n = m.rank();
  if (relations.rows() != n) throw std::invalid_argument("relation vectors have the wrong length");
  auto s = smith_normal_form(relations);
  for (Index i = 0; i < s.rank; ++i)
    if (s.factor(i) != Scalar(1))
      throw std::domain_error("quotient of '" + m.label() +
                              "' has torsion; only free coefficient lattices are supported");
  BasicLatticeQuotient<Scalar> q;
  q.projection = s.U.bottomRows(n - s.rank);
  q.section = s.U_inv.rightCols(n - s.rank);
  if (!all_zero(Matrix<Scalar>(q.projection * m.tau() * relations)))
    throw std::invalid_argument("relations of '" + m.label() + "' are not stable under the involution");
  q.lattice = make_lattice<Scalar>(Matrix<Scalar>(q.projection * m.tau() * q.section), std::move(label));
  return q;
}

/// Outcome of the exhaustive kernel check of H^1 ^ H^1 -> H^2(M ^ M).
struct CupWedgeCheck {
  bool injective = true;
  Index h1_dimension = 0;
  Index elements_checked = 0;
  /// Nonzero element of H^1 ^ H^1 (pair coefficients, lexicographic) mapping to 0.
  F2Vector witness;
};

template <typename Scalar>
std::vector<F2Vector> cup_wedge_images(const BasicInvolutiveLattice<Scalar>& m) {
  const auto first = h1(m);
  const auto wedge = exterior_square(m);
  const auto second = h2(wedge);
  const Matrix<Scalar> w = wedge_quotient<Scalar>(m.rank());
  const Index k = first.num_generators();
  std::vector<F2Vector> images;
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      Vector<Scalar> rep = w * cup_representative(m.tau(), first.generator(i), first.generator(j));
      images.push_back(second.f2_coordinates(rep));
    }
  return images;
}

/// Exhaustively enumerates H^1 ^ H^1 and reports a nonzero element in the kernel, if any.
template <typename Scalar>
CupWedgeCheck check_cup_wedge_injective(const BasicInvolutiveLattice<Scalar>& m) {
  CupWedgeCheck out;
  const auto first = h1(m);
  out.h1_dimension = first.num_generators();
  const auto images = cup_wedge_images(m);
  const std::size_t pairs = images.size();
  if (pairs >= 40) throw std::domain_error("H^1 ^ H^1 too large for exhaustive enumeration");
  const std::size_t width = images.empty() ? 0 : images.front().size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pairs); ++mask) {
    F2Vector acc(width, 0);
    for (std::size_t p = 0; p < pairs; ++p)
      if (mask >> p & 1U)
        for (std::size_t b = 0; b < width; ++b) acc[b] ^= images[p][b];
    ++out.elements_checked;
    bool zero = true;
    for (auto bit : acc) zero = zero && bit == 0;
    if (zero) {
      out.injective = false;
      out.witness.assign(pairs, 0);
      for (std::size_t p = 0; p < pairs; ++p) out.witness[p] = mask >> p & 1U;
      return out;
    }
  }
  return out;
}

using InvolutiveLattice = BasicInvolutiveLattice<Integer>;
using FinAbGroup = BasicFinAbGroup<Integer>;
using CohClass = BasicCohClass<Integer>;
using EquivariantMap = BasicEquivariantMap<Integer>;
using LatticeQuotient = BasicLatticeQuotient<Integer>;

extern template class BasicInvolutiveLattice<Integer>;
extern template class BasicFinAbGroup<Integer>;
extern template class BasicCohClass<Integer>;
extern template class BasicEquivariantMap<Integer>;

}  // namespace nilsect
