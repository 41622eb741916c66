#pragma once

// Exact arithmetic in class-2 nilpotent quotients pi / [pi]_3.
//
// Elements are written in the normal form s(v) z of the ordered-word section
// s(v) = x_1^{v_1} ... x_n^{v_n}, with z central. The product is
//   (v, z) o (w, y) = (v + w, z + y + <v, w>)
// where <v, w> comes from collecting x^v x^w back into ordered form.

#include "nilsect/zcoh.hpp"

#include <string>
#include <vector>

namespace nilsect {

template <typename Scalar>
struct BasicNil2Element {
  Vector<Scalar> v;  // abelianized part, length n
  Vector<Scalar> z;  // center coordinates

  friend bool operator==(const BasicNil2Element& a, const BasicNil2Element& b) {
    return same_entries(a.v, b.v) && same_entries(a.z, b.z);
  }
  friend bool operator!=(const BasicNil2Element& a, const BasicNil2Element& b) { return !(a == b); }
};

/// Free class-2 nilpotent group on n generators modulo central relations
/// (vectors of the exterior square), together with an involution given by
/// the images of the generators.
template <typename Scalar>
class BasicNil2Group {
 public:
  using Element = BasicNil2Element<Scalar>;

  /// `tau_image_lifts` carry their z-parts in exterior-square coordinates; they
  /// are projected to the center. Relations are the columns of `relations`.
  BasicNil2Group(Index n, const Matrix<Scalar>& relations, const std::vector<Element>& tau_image_lifts,
                 std::string label = {})
      : n_(n), relations_(relations), label_(std::move(label)) {
    const Index wedge_rank = pair_count(n_);
    if (relations_.rows() != wedge_rank)
      throw std::invalid_argument("relations must be vectors of the exterior square");
    if (static_cast<Index>(tau_image_lifts.size()) != n_)
      throw std::invalid_argument("one involution image per generator is required");

    Matrix<Scalar> tau_ab(n_, n_);
    for (Index i = 0; i < n_; ++i) {
      const auto& img = tau_image_lifts[static_cast<std::size_t>(i)];
      if (img.v.size() != n_ || img.z.size() != wedge_rank)
        throw std::invalid_argument("involution image " + std::to_string(i) + " has the wrong shape");
      tau_ab.col(i) = img.v;
    }
    abelianization_ = make_lattice<Scalar>(tau_ab, label_ + ".ab");
    BasicInvolutiveLattice<Scalar> wedge(exterior_square_map(tau_ab), label_ + ".wedge");
    auto q = quotient(wedge, relations_, label_ + ".center");
    center_ = q.lattice;
    projection_ = q.projection;
    section_ = q.section;

    build_collection_table();

    tau_images_.reserve(tau_image_lifts.size());
    for (const auto& img : tau_image_lifts) tau_images_.push_back(Element{img.v, projection_ * img.z});

    for (Index i = 0; i < n_; ++i)
      if (apply_tau(apply_tau(generator(i))) != generator(i))
        throw std::invalid_argument("generator images do not define an involution (generator " +
                                    std::to_string(i) + ")");
  }

  /// Free nilpotent group with the given involution images.
  static BasicNil2Group free(Index n, const std::vector<Element>& tau_image_lifts, std::string label = {}) {
    return BasicNil2Group(n, Matrix<Scalar>(pair_count(n), 0), tau_image_lifts, std::move(label));
  }

  /// Free nilpotent group with the trivial involution.
  static BasicNil2Group free(Index n) {
    std::vector<Element> images;
    for (Index i = 0; i < n; ++i)
      images.push_back(Element{unit_vector<Scalar>(n, i), Vector<Scalar>::Zero(pair_count(n))});
    return free(n, images, "F" + std::to_string(n));
  }

  Index rank() const { return n_; }
  Index center_rank() const { return center_->rank(); }
  const std::string& label() const { return label_; }

  const BasicInvolutiveLattice<Scalar>& abelianization() const { return *abelianization_; }
  const LatticePtr<Scalar>& abelianization_ptr() const { return abelianization_; }
  const BasicInvolutiveLattice<Scalar>& center() const { return *center_; }
  const LatticePtr<Scalar>& center_ptr() const { return center_; }

  /// Exterior square -> center.
  const Matrix<Scalar>& center_projection() const { return projection_; }
  /// Center -> exterior square, a right inverse of the projection.
  const Matrix<Scalar>& center_section() const { return section_; }
  const Matrix<Scalar>& relations() const { return relations_; }
  const std::vector<Element>& tau_images() const { return tau_images_; }

  Element identity() const { return Element{Vector<Scalar>::Zero(n_), Vector<Scalar>::Zero(center_rank())}; }

  /// s(v): the ordered word x_1^{v_1} ... x_n^{v_n}.
  Element section(const Vector<Scalar>& v) const {
    require_length(v, n_);
    return Element{v, Vector<Scalar>::Zero(center_rank())};
  }

  Element generator(Index i) const { return section(unit_vector<Scalar>(n_, i)); }

  Element central(const Vector<Scalar>& z) const {
    require_length(z, center_rank());
    return Element{Vector<Scalar>::Zero(n_), z};
  }

  /// Element with z given in exterior-square coordinates.
  Element from_wedge(const Vector<Scalar>& v, const Vector<Scalar>& z_wedge) const {
    require_length(v, n_);
    require_length(z_wedge, pair_count(n_));
    return Element{v, projection_ * z_wedge};
  }

  /// The bilinear correction <v, w> of the normal-form product.
  Vector<Scalar> pairing(const Vector<Scalar>& v, const Vector<Scalar>& w) const {
    Vector<Scalar> out = Vector<Scalar>::Zero(center_rank());
    for (const auto& term : collection_)
      if (v(term.later) != Scalar(0) && w(term.earlier) != Scalar(0))
        out += (v(term.later) * w(term.earlier)) * term.center;
    return out;
  }

  Element compose(const Element& a, const Element& b) const {
    require(a);
    require(b);
    return Element{a.v + b.v, a.z + b.z + pairing(a.v, b.v)};
  }

  Element inverse(const Element& a) const { return power(a, Scalar(-1)); }

  /// a^k = (k v, k z + k(k-1)/2 <v, v>), valid for every integer k.
  Element power(const Element& a, const Scalar& k) const {
    require(a);
    Scalar tri = k * (k - Scalar(1)) / Scalar(2);
    return Element{k * a.v, k * a.z + tri * pairing(a.v, a.v)};
  }

  /// [a, b] = a b a^{-1} b^{-1}, a center vector.
  Vector<Scalar> commutator(const Element& a, const Element& b) const {
    require(a);
    require(b);
    return pairing(a.v, b.v) - pairing(b.v, a.v);
  }

  Element conjugate(const Element& w, const Element& a) const { return compose(compose(w, a), inverse(w)); }

  /// Image under the involution, by substituting generator images into the ordered word.
  Element apply_tau(const Element& a) const {
    require(a);
    Element acc = central(center_->tau() * a.z);
    Element word = identity();
    for (Index i = 0; i < n_; ++i)
      if (a.v(i) != Scalar(0))
        word = compose(word, power(tau_images_[static_cast<std::size_t>(i)], a.v(i)));
    return compose(word, acc);
  }

  /// Matrix of the commutator pairing on the exterior square: column e_i ^ e_j is [s(e_i), s(e_j)].
  Matrix<Scalar> commutator_map() const {
    Matrix<Scalar> m(center_rank(), pair_count(n_));
    for (Index i = 0; i < n_; ++i)
      for (Index j = i + 1; j < n_; ++j) m.col(wedge_index(i, j, n_)) = commutator(generator(i), generator(j));
    return m;
  }

  bool is_element(const Element& a) const { return a.v.size() == n_ && a.z.size() == center_rank(); }

 private:
  struct CollectionTerm {
    Index later;    // i
    Index earlier;  // j < i
    Vector<Scalar> center;
  };

  // Moving x_j^q (j < i) left past x_i^p produces the central factor [x_i, x_j]^{pq};
  // in the exterior square [x_i, x_j] = e_i ^ e_j = -(e_j ^ e_i).
  void build_collection_table() {
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < i; ++j) {
        Vector<Scalar> symbol = Vector<Scalar>::Zero(pair_count(n_));
        symbol(wedge_index(j, i, n_)) = Scalar(-1);
        collection_.push_back(CollectionTerm{i, j, projection_ * symbol});
      }
  }

  void require(const Element& a) const {
    if (!is_element(a)) throw std::invalid_argument("element does not belong to group '" + label_ + "'");
  }

  static void require_length(const Vector<Scalar>& x, Index n) {
    if (x.size() != n) throw std::invalid_argument("vector has the wrong length");
  }

  Index n_ = 0;
  Matrix<Scalar> relations_;
  std::string label_;
  LatticePtr<Scalar> abelianization_;
  LatticePtr<Scalar> center_;
  Matrix<Scalar> projection_, section_;
  std::vector<CollectionTerm> collection_;
  std::vector<Element> tau_images_;
};

/// omega = sum_i a_i ^ b_i for the generator order a_1, b_1, ..., a_g, b_g.
template <typename Scalar>
Vector<Scalar> symplectic_class(Index genus) {
  const Index n = 2 * genus;
  Vector<Scalar> w = Vector<Scalar>::Zero(pair_count(n));
  for (Index i = 0; i < genus; ++i) w(wedge_index(2 * i, 2 * i + 1, n)) = Scalar(1);
  return w;
}

/// Center of the class-2 quotient of a genus-g surface group, Lambda^2 Z^{2g} / <omega>,
/// with the involution induced by `tau_ab` (identity when omitted).
template <typename Scalar>
BasicLatticeQuotient<Scalar> surface_center(Index genus, const Matrix<Scalar>& tau_ab) {
  if (genus < 0) throw std::invalid_argument("negative genus");
  const Index n = 2 * genus;
  if (tau_ab.rows() != n || tau_ab.cols() != n) throw std::invalid_argument("involution has the wrong size");
  BasicInvolutiveLattice<Scalar> wedge(exterior_square_map(tau_ab), "wedge");
  Matrix<Scalar> rel(pair_count(n), genus == 0 ? 0 : 1);
  if (genus > 0) rel.col(0) = symplectic_class<Scalar>(genus);
  return quotient(wedge, rel, "surface center g=" + std::to_string(genus));
}

template <typename Scalar>
BasicLatticeQuotient<Scalar> surface_center(Index genus) {
  return surface_center<Scalar>(genus, identity_matrix<Scalar>(2 * genus));
}

/// Center of the free class-2 nilpotent group, the full exterior square.
template <typename Scalar>
BasicLatticeQuotient<Scalar> free_center(Index n, const Matrix<Scalar>& tau_ab) {
  BasicInvolutiveLattice<Scalar> wedge(exterior_square_map(tau_ab), "wedge");
  return quotient(wedge, Matrix<Scalar>(pair_count(n), 0), "free center n=" + std::to_string(n));
}

using Nil2Element = BasicNil2Element<Integer>;
using Nil2Group = BasicNil2Group<Integer>;

extern template class BasicNil2Group<Integer>;

}  // namespace nilsect
