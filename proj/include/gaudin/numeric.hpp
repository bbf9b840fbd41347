#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gaudin/sparse.hpp"

namespace gaudin {

Eigen::MatrixXd to_dense_real(const ExactOperator& op);
Eigen::MatrixXcd to_dense_complex(const ComplexOperator& op);

Eigen::VectorXcd apply_dense(const ComplexOperator& op, const Eigen::VectorXcd& x);

double inf_norm(const Eigen::VectorXcd& x);

/// max_i ‖H_i x - s_i x‖_∞ / ‖x‖_∞
double eigen_residual(std::span<const ComplexOperator> hs, const Eigen::VectorXcd& x,
                      std::span<const std::complex<double>> eigenvalues);

/// Euclidean Rayleigh quotients x*H_i x / x*x for each operator.
std::vector<std::complex<double>> rayleigh_quotients(std::span<const ComplexOperator> hs, const Eigen::VectorXcd& x);

/// Smallest singular value of the matrix whose columns are `columns`.
double min_singular_value(const std::vector<Eigen::VectorXcd>& columns);

}  // namespace gaudin
