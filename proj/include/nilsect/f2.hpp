#pragma once

#include "nilsect/integer.hpp"

#include <optional>

namespace nilsect::f2 {

F2Vector add(const F2Vector& a, const F2Vector& b);
bool is_zero(const F2Vector& a);

/// Rank over F_2 of the given vectors (all of equal length).
std::size_t rank(const std::vector<F2Vector>& vectors);

/// Coefficients c with sum_i c_i columns[i] = target, if the target is in the span.
std::optional<F2Vector> solve(const std::vector<F2Vector>& columns, const F2Vector& target);

/// Integer-coordinate vector to bits; odd entries become 1.
F2Vector from_integers(const IntVector& v);

}  // namespace nilsect::f2
