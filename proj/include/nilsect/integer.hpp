#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace nilsect {

namespace mp = boost::multiprecision;

/// Arbitrary precision integer used for every lattice coordinate.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
/// Exact rationals, used only for points of the Alb tori.
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Coordinates in an F_2 vector space, one byte per entry (0 or 1).
using F2Vector = std::vector<std::uint8_t>;

template <typename Scalar>
inline Scalar magnitude(const Scalar& a) {
  return a < Scalar(0) ? Scalar(-a) : a;
}

/// Remainder in [0, |m|).
template <typename Scalar>
inline Scalar floor_mod(const Scalar& a, const Scalar& m) {
  Scalar r = a % m;
  if (r < Scalar(0)) r += magnitude(m);
  return r;
}

template <typename Derived>
inline bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

/// Exact equality that tolerates shape mismatch (Eigen asserts on it).
template <typename A, typename B>
inline bool same_entries(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename Scalar>
inline Matrix<Scalar> identity_matrix(Index n) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

template <typename Scalar>
inline Vector<Scalar> unit_vector(Index n, Index i) {
  Vector<Scalar> v = Vector<Scalar>::Zero(n);
  v(i) = Scalar(1);
  return v;
}

/// Number of unordered pairs i < j among n indices.
inline Index pair_count(Index n) { return n * (n - 1) / 2; }

/// Position of e_i ^ e_j (i < j) in the lexicographic basis of the exterior square.
inline Index wedge_index(Index i, Index j, Index n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Position of e_i (x) e_j in the row-major basis of the tensor square.
inline Index tensor_index(Index i, Index j, Index n) { return i * n + j; }

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

}  // namespace nilsect
