#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "gaudin/errors.hpp"
#include "gaudin/rational.hpp"

namespace gaudin {

template <class Scalar>
inline bool is_zero(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == Scalar{};
  }
}

/// Column-compressed matrix between two weight spaces, V_from → V_to.
///
/// Columns index the domain basis, rows the codomain basis. No explicit
/// zeros are stored; entries within a column are sorted by row.
template <class Scalar>
class SparseOperator {
 public:
  struct Entry {
    std::size_t row;
    Scalar value;
  };

  SparseOperator() = default;
  SparseOperator(std::size_t rows, std::size_t cols, int from_degree, int to_degree)
      : rows_(rows), cols_(cols), from_(from_degree), to_(to_degree), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int from_degree() const noexcept { return from_; }
  int to_degree() const noexcept { return to_; }
  const std::vector<Entry>& column(std::size_t j) const { return columns_.at(j); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const {
    for (const auto& c : columns_) {
      if (!c.empty()) return false;
    }
    return true;
  }

  /// Replaces column j. Zero values are dropped; rows must be in range.
  void set_column(std::size_t j, const std::map<std::size_t, Scalar>& entries) {
    auto& col = columns_.at(j);
    col.clear();
    for (const auto& [row, value] : entries) {
      if (row >= rows_) throw std::out_of_range("sparse operator row out of range");
      if (!gaudin::is_zero(value)) col.push_back({row, value});
    }
  }

  Scalar at(std::size_t row, std::size_t col) const {
    for (const auto& e : columns_.at(col)) {
      if (e.row == row) return e.value;
    }
    return Scalar{};
  }

  std::vector<Scalar> apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw DomainError("vector length does not match operator domain");
    std::vector<Scalar> y(rows_, Scalar{});
    for (std::size_t j = 0; j < cols_; ++j) {
      if (gaudin::is_zero(x[j])) continue;
      for (const auto& e : columns_[j]) y[e.row] += e.value * x[j];
    }
    return y;
  }

  /// (row, col, value) triplets in column-major order.
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> triplets() const {
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> out;
    for (std::size_t j = 0; j < cols_; ++j) {
      for (const auto& e : columns_[j]) out.emplace_back(e.row, j, e.value);
    }
    return out;
  }

  template <class Fn>
  auto map(Fn fn) const -> SparseOperator<std::invoke_result_t<Fn, const Scalar&>> {
    using Out = std::invoke_result_t<Fn, const Scalar&>;
    SparseOperator<Out> r(rows_, cols_, from_, to_);
    for (std::size_t j = 0; j < cols_; ++j) {
      std::map<std::size_t, Out> col;
      for (const auto& e : columns_[j]) col.emplace(e.row, fn(e.value));
      r.set_column(j, col);
    }
    return r;
  }

  SparseOperator& operator*=(const Scalar& s) {
    if (gaudin::is_zero(s)) {
      for (auto& c : columns_) c.clear();
      return *this;
    }
    for (auto& c : columns_) {
      for (auto& e : c) e.value *= s;
    }
    return *this;
  }

  friend SparseOperator operator*(SparseOperator a, const Scalar& s) { return a *= s; }
  friend SparseOperator operator*(const Scalar& s, SparseOperator a) { return a *= s; }

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    return combine(a, b, Scalar(1));
  }
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    return combine(a, b, Scalar(-1));
  }

  /// Composition a∘b: apply b first, then a.
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (a.cols_ != b.rows_) throw DomainError("operator composition: dimension mismatch");
    SparseOperator r(a.rows_, b.cols_, b.from_, a.to_);
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& eb : b.columns_[j]) {
        for (const auto& ea : a.columns_[eb.row]) {
          auto [it, inserted] = acc.try_emplace(ea.row, ea.value * eb.value);
          if (!inserted) it->second += ea.value * eb.value;
        }
      }
      r.set_column(j, acc);
    }
    return r;
  }

  friend bool operator==(const SparseOperator& a, const SparseOperator& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return (a - b).is_zero();
  }

 private:
  static SparseOperator combine(const SparseOperator& a, const SparseOperator& b, const Scalar& sb) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw DomainError("operator sum: dimension mismatch");
    }
    SparseOperator r(a.rows_, a.cols_, a.from_, a.to_);
    for (std::size_t j = 0; j < a.cols_; ++j) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& e : a.columns_[j]) acc.emplace(e.row, e.value);
      for (const auto& e : b.columns_[j]) {
        auto [it, inserted] = acc.try_emplace(e.row, sb * e.value);
        if (!inserted) it->second += sb * e.value;
      }
      r.set_column(j, acc);
    }
    return r;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int from_ = 0;
  int to_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

template <class Scalar>
SparseOperator<Scalar> commutator(const SparseOperator<Scalar>& a, const SparseOperator<Scalar>& b) {
  return a * b - b * a;
}

using ExactOperator = SparseOperator<Rational>;
using ComplexOperator = SparseOperator<std::complex<double>>;
using ExactVector = std::vector<Rational>;
using ComplexVector = std::vector<std::complex<double>>;

inline ComplexOperator to_complex(const ExactOperator& op) {
  return op.map([](const Rational& q) { return std::complex<double>(q.get_d(), 0.0); });
}

}  // namespace gaudin
