#include "nilsect/f2.hpp"

#include <stdexcept>

namespace nilsect::f2 {

F2Vector add(const F2Vector& a, const F2Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("F_2 vectors of different length");
  F2Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

bool is_zero(const F2Vector& a) {
  for (auto bit : a)
    if (bit) return false;
  return true;
}

namespace {

// Row-reduces the augmented system; `rows` are equations over the columns.
struct Elimination {
  std::vector<F2Vector> rows;
  std::vector<std::size_t> pivot_cols;
};

Elimination eliminate(std::vector<F2Vector> rows, std::size_t width) {
  Elimination e;
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][col]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][col])
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] ^= rows[r][j];
    e.pivot_cols.push_back(col);
    ++r;
  }
  e.rows = std::move(rows);
  return e;
}

}  // namespace

std::size_t rank(const std::vector<F2Vector>& vectors) {
  if (vectors.empty()) return 0;
  return eliminate(vectors, vectors.front().size()).pivot_cols.size();
}

std::optional<F2Vector> solve(const std::vector<F2Vector>& columns, const F2Vector& target) {
  const std::size_t unknowns = columns.size();
  const std::size_t equations = target.size();
  std::vector<F2Vector> rows(equations, F2Vector(unknowns + 1, 0));
  for (std::size_t i = 0; i < equations; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) {
      if (columns[j].size() != equations) throw std::invalid_argument("F_2 system with ragged columns");
      rows[i][j] = columns[j][i];
    }
    rows[i][unknowns] = target[i];
  }
  auto e = eliminate(std::move(rows), unknowns);
  F2Vector x(unknowns, 0);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    bool any = false;
    for (std::size_t j = 0; j < unknowns; ++j) any = any || e.rows[r][j];
    if (!any && e.rows[r][unknowns]) return std::nullopt;
  }
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.rows[r][unknowns];
  return x;
}

F2Vector from_integers(const IntVector& v) {
  F2Vector out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = floor_mod(v(i), Integer(2)) == 0 ? 0 : 1;
  return out;
}

}  // namespace nilsect::f2
