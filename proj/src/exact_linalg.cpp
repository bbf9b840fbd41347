#include "gaudin/exact_linalg.hpp"

#include <utility>

namespace gaudin {

Echelon reduced_row_echelon(ExactMatrix rows) {
  Echelon out;
  if (rows.empty()) return out;
  const std::size_t n_cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = c; k < n_cols; ++k) {
        if (sgn(rows[r][k]) != 0) rows[i][k] -= f * rows[r][k];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

std::size_t exact_rank(ExactMatrix rows) { return reduced_row_echelon(std::move(rows)).rows.size(); }

ExactMatrix to_dense(const ExactOperator& op) {
  ExactMatrix m(op.rows(), ExactVector(op.cols(), Rational(0)));
  for (std::size_t j = 0; j < op.cols(); ++j) {
    for (const auto& e : op.column(j)) m[e.row][j] = e.value;
  }
  return m;
}

std::vector<ExactVector> nullspace(const ExactOperator& op) {
  const std::size_t n = op.cols();
  std::vector<ExactVector> basis;
  if (n == 0) return basis;
  const Echelon ech = reduced_row_echelon(to_dense(op));
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ExactVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  return reduced_row_echelon(std::move(basis)).rows;
}

ExactMatrix vectorize(const std::vector<ExactOperator>& ops) {
  ExactMatrix out;
  for (const auto& op : ops) {
    ExactVector row(op.rows() * op.cols(), Rational(0));
    for (std::size_t j = 0; j < op.cols(); ++j) {
      for (const auto& e : op.column(j)) row[j * op.rows() + e.row] = e.value;
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace gaudin
