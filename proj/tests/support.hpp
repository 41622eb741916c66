#pragma once

#include "nilsect/curve.hpp"
#include "nilsect/f2.hpp"
#include "nilsect/random.hpp"

#include <set>
#include <string>
#include <vector>

namespace nilsect::testing {

/// Fraction-free Gaussian elimination.
inline Integer bareiss_determinant(IntMatrix a) {
  const Index n = a.rows();
  if (n == 0) return Integer(1);
  Integer sign(1), prev(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline IntMatrix random_matrix(Rng& rng, Index rows, Index cols, int bound) {
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = draw(rng, -bound, bound);
  return m;
}

struct Conjugated {
  IntMatrix tau;
  IntMatrix change;
  Index trivial = 0, sign = 0, regular = 0;
};

/// tau = P D P^-1 with D a block sum of (1), (-1) and swaps, P a product of elementary matrices.
inline Conjugated random_involution(Rng& rng, Index n, int mixing_steps = 3) {
  Conjugated out;
  IntMatrix d = IntMatrix::Zero(n, n);
  Index i = 0;
  while (i < n) {
    const int kind = static_cast<int>(draw(rng, 0, i + 1 < n ? 2 : 1));
    if (kind == 0) {
      d(i, i) = 1;
      ++out.trivial;
      ++i;
    } else if (kind == 1) {
      d(i, i) = -1;
      ++out.sign;
      ++i;
    } else {
      d(i, i + 1) = 1;
      d(i + 1, i) = 1;
      ++out.regular;
      i += 2;
    }
  }
  IntMatrix p = identity_matrix<Integer>(n), p_inv = identity_matrix<Integer>(n);
  for (int s = 0; s < mixing_steps && n > 1; ++s) {
    const Index r = draw(rng, 0, n - 1);
    Index c = draw(rng, 0, n - 2);
    if (c >= r) ++c;
    const Integer k = draw(rng, -1, 1);
    IntMatrix e = identity_matrix<Integer>(n), e_inv = identity_matrix<Integer>(n);
    e(r, c) = k;
    e_inv(r, c) = -k;
    p = (p * e).eval();
    p_inv = (e_inv * p_inv).eval();
  }
  out.tau = p * d * p_inv;
  out.change = p;
  return out;
}

/// Equivariant data for a free class-2 group with the given generator images and component lifts.
inline EquivariantPi1Data free_data(Index n, const std::vector<Nil2Element>& images,
                                    const std::vector<Nil2Element>& lifts, const std::string& name = "test") {
  EquivariantPi1Data data;
  data.name = name;
  data.nil2 = std::make_shared<const Nil2Group>(Nil2Group::free(n, images, name));
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    data.pi0_real.labels.push_back("c" + std::to_string(i));
    data.kappa_lifts.push_back(lifts[i]);
    data.kappa_classes.emplace_back(data.abelianization_ptr(), 1, lifts[i].v);
  }
  return data;
}

/// Free group of rank n with tau(x_i) = x_i^-1 and components {1, x_1, ..., x_n}.
inline EquivariantPi1Data free_minus_identity(Index n) {
  std::vector<Nil2Element> images, lifts;
  const Index c = pair_count(n);
  lifts.push_back(Nil2Element{IntVector::Zero(n), IntVector::Zero(c)});
  for (Index i = 0; i < n; ++i) {
    images.push_back(Nil2Element{-unit_vector<Integer>(n, i), IntVector::Zero(c)});
    lifts.push_back(Nil2Element{unit_vector<Integer>(n, i), IntVector::Zero(c)});
  }
  return free_data(n, images, lifts, "free_minus_identity_" + std::to_string(n));
}

inline IntVector vec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline std::vector<F2Vector> mod2_columns(const IntMatrix& m) {
  std::vector<F2Vector> cols;
  for (Index j = 0; j < m.cols(); ++j) cols.push_back(f2::from_integers(IntVector(m.col(j))));
  return cols;
}

// Ker(a) is saturated and contains 2 * Ker(a) inside Im(b), so Ker(a)/Im(b) is the quotient of the
// mod-2 reductions. Image of Im(b) mod 2 is exact from b over {0,1}^n; the image of Ker(a) mod 2
// is collected from solutions in a box.
inline Index brute_force_order(const IntMatrix& a, const IntMatrix& b, int box) {
  const Index n = a.cols();
  std::set<F2Vector> kernel_mod2;
  IntVector x = IntVector::Constant(n, Integer(-box));
  for (;;) {
    if (all_zero(IntVector(a * x))) kernel_mod2.insert(f2::from_integers(x));
    Index i = 0;
    while (i < n && x(i) == box) x(i++) = -box;
    if (i == n) break;
    x(i) += 1;
  }
  const Index image_dim = static_cast<Index>(f2::rank(mod2_columns(b)));
  Index kernel_dim = 0;
  while ((Index{1} << kernel_dim) < static_cast<Index>(kernel_mod2.size())) ++kernel_dim;
  if ((Index{1} << kernel_dim) != static_cast<Index>(kernel_mod2.size()) || kernel_dim < image_dim) return 0;
  return Index{1} << (kernel_dim - image_dim);
}

}  // namespace nilsect::testing
