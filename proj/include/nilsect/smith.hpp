#pragma once

#include "nilsect/integer.hpp"

#include <algorithm>
#include <optional>

namespace nilsect {

/// U * A * V = D with U, V unimodular and D diagonal, d_0 | d_1 | ... | d_{rank-1},
/// all diagonal entries nonnegative, together with U^-1 and V^-1.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U, D, V;
  Matrix<Scalar> U_inv, V_inv;
  Index rank = 0;

  Scalar factor(Index i) const { return D(i, i); }
};

namespace detail {

template <typename Scalar>
class SmithReducer {
 public:
  explicit SmithReducer(const Matrix<Scalar>& a) {
    out_.D = a;
    out_.U = identity_matrix<Scalar>(a.rows());
    out_.U_inv = out_.U;
    out_.V = identity_matrix<Scalar>(a.cols());
    out_.V_inv = out_.V;
  }

  SmithDecomposition<Scalar> run() {
    Matrix<Scalar>& d = out_.D;
    const Index steps = std::min(d.rows(), d.cols());
    Index t = 0;
    for (; t < steps; ++t) {
      if (!reduce_block(t)) break;
      if (d(t, t) < Scalar(0)) negate_row(t);
    }
    out_.rank = t;
    return std::move(out_);
  }

 private:
  // Returns false once the trailing block is zero.
  bool reduce_block(Index t) {
    Matrix<Scalar>& d = out_.D;
    for (;;) {
      Index pi = -1, pj = -1;
      Scalar best(0);
      for (Index j = t; j < d.cols(); ++j)
        for (Index i = t; i < d.rows(); ++i) {
          if (d(i, j) == Scalar(0)) continue;
          Scalar m = magnitude(d(i, j));
          if (pi < 0 || m < best) {
            best = m;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (Index i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == Scalar(0)) continue;
        Scalar q = d(i, t) / d(t, t);
        if (q != Scalar(0)) add_row(i, t, Scalar(-q));
        if (d(i, t) != Scalar(0)) clean = false;
      }
      for (Index j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == Scalar(0)) continue;
        Scalar q = d(t, j) / d(t, t);
        if (q != Scalar(0)) add_col(j, t, Scalar(-q));
        if (d(t, j) != Scalar(0)) clean = false;
      }
      if (!clean) continue;

      // divisibility chain
      bool divisible = true;
      for (Index i = t + 1; i < d.rows() && divisible; ++i)
        for (Index j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != Scalar(0)) {
            add_row(t, i, Scalar(1));
            divisible = false;
            break;
          }
      if (divisible) return true;
    }
  }

  // row_i += q * row_j
  void add_row(Index i, Index j, const Scalar& q) {
    out_.D.row(i) += q * out_.D.row(j);
    out_.U.row(i) += q * out_.U.row(j);
    out_.U_inv.col(j) -= q * out_.U_inv.col(i);
  }

  // col_i += q * col_j
  void add_col(Index i, Index j, const Scalar& q) {
    out_.D.col(i) += q * out_.D.col(j);
    out_.V.col(i) += q * out_.V.col(j);
    out_.V_inv.row(j) -= q * out_.V_inv.row(i);
  }

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    out_.D.row(a).swap(out_.D.row(b));
    out_.U.row(a).swap(out_.U.row(b));
    out_.U_inv.col(a).swap(out_.U_inv.col(b));
  }

  void swap_cols(Index a, Index b) {
    if (a == b) return;
    out_.D.col(a).swap(out_.D.col(b));
    out_.V.col(a).swap(out_.V.col(b));
    out_.V_inv.row(a).swap(out_.V_inv.row(b));
  }

  void negate_row(Index i) {
    out_.D.row(i) = -out_.D.row(i);
    out_.U.row(i) = -out_.U.row(i);
    out_.U_inv.col(i) = -out_.U_inv.col(i);
  }

  SmithDecomposition<Scalar> out_;
};

}  // namespace detail

template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(const Matrix<Scalar>& a) {
  return detail::SmithReducer<Scalar>(a).run();
}

/// Saturated basis (as columns) of the integer kernel of A.
template <typename Scalar>
Matrix<Scalar> integer_kernel(const Matrix<Scalar>& a) {
  auto s = smith_normal_form(a);
  return s.V.rightCols(a.cols() - s.rank);
}

/// Some integer solution of A x = b, if one exists.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_integer(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                                            const SmithDecomposition<Scalar>& s) {
  Vector<Scalar> ub = s.U * b;
  Vector<Scalar> y = Vector<Scalar>::Zero(a.cols());
  for (Index i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub(i) % s.factor(i) != Scalar(0)) return std::nullopt;
      y(i) = ub(i) / s.factor(i);
    } else if (ub(i) != Scalar(0)) {
      return std::nullopt;
    }
  }
  return Vector<Scalar>(s.V * y);
}

template <typename Scalar>
std::optional<Vector<Scalar>> solve_integer(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  return solve_integer(a, b, smith_normal_form(a));
}

/// True if b lies in the Z-span of the columns of A.
template <typename Scalar>
bool in_integer_span(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  return solve_integer(a, b).has_value();
}

}  // namespace nilsect
