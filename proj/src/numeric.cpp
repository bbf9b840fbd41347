#include "gaudin/numeric.hpp"

#include <algorithm>

#include "gaudin/errors.hpp"

namespace gaudin {

Eigen::MatrixXd to_dense_real(const ExactOperator& op) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(op.rows()), static_cast<Eigen::Index>(op.cols()));
  for (std::size_t j = 0; j < op.cols(); ++j) {
    for (const auto& e : op.column(j)) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(j)) = e.value.get_d();
  }
  return m;
}

Eigen::MatrixXcd to_dense_complex(const ComplexOperator& op) {
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(op.rows()), static_cast<Eigen::Index>(op.cols()));
  for (std::size_t j = 0; j < op.cols(); ++j) {
    for (const auto& e : op.column(j)) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(j)) = e.value;
  }
  return m;
}

Eigen::VectorXcd apply_dense(const ComplexOperator& op, const Eigen::VectorXcd& x) {
  if (static_cast<std::size_t>(x.size()) != op.cols()) throw DomainError("vector length does not match operator");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op.rows()));
  for (std::size_t j = 0; j < op.cols(); ++j) {
    const auto xj = x(static_cast<Eigen::Index>(j));
    for (const auto& e : op.column(j)) y(static_cast<Eigen::Index>(e.row)) += e.value * xj;
  }
  return y;
}

double inf_norm(const Eigen::VectorXcd& x) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x(i)));
  return r;
}

double eigen_residual(std::span<const ComplexOperator> hs, const Eigen::VectorXcd& x,
                      std::span<const std::complex<double>> eigenvalues) {
  const double scale = inf_norm(x);
  if (scale == 0.0) throw DomainError("eigen residual of the zero vector");
  double worst = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Eigen::VectorXcd r = apply_dense(hs[i], x) - eigenvalues[i] * x;
    worst = std::max(worst, inf_norm(r) / scale);
  }
  return worst;
}

std::vector<std::complex<double>> rayleigh_quotients(std::span<const ComplexOperator> hs, const Eigen::VectorXcd& x) {
  const std::complex<double> denom = x.squaredNorm();
  std::vector<std::complex<double>> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back(x.dot(apply_dense(h, x)) / denom);
  return out;
}

double min_singular_value(const std::vector<Eigen::VectorXcd>& columns) {
  if (columns.empty()) return 0.0;
  Eigen::MatrixXcd m(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = columns[j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (m.cols() > m.rows()) return 0.0;
  return s(s.size() - 1);
}

}  // namespace gaudin
