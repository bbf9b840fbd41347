#pragma once

#include <cstddef>
#include <vector>

#include "gaudin/rational.hpp"
#include "gaudin/sparse.hpp"

namespace gaudin {

/// Dense rational matrix stored as a list of rows.
using ExactMatrix = std::vector<ExactVector>;

struct Echelon {
  ExactMatrix rows;                  // nonzero rows of the reduced echelon form
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form by fraction-exact Gauss-Jordan elimination.
Echelon reduced_row_echelon(ExactMatrix rows);

std::size_t exact_rank(ExactMatrix rows);

ExactMatrix to_dense(const ExactOperator& op);

/// Basis of ker(op), returned in canonical form: the rows of the reduced
/// echelon form of the kernel. Empty when the kernel is zero.
std::vector<ExactVector> nullspace(const ExactOperator& op);

/// Flattens each operator into one row (column-major) for rank tests of
/// families of operators.
ExactMatrix vectorize(const std::vector<ExactOperator>& ops);

}  // namespace gaudin
