#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaudin/rational.hpp"

namespace gaudin {

/// A Gaudin problem instance: N >= 2 sites with positive integer highest
/// weights and pairwise distinct rational site parameters.
///
/// Sites are indexed from 0 in the C++ API. Text formats (JSON reports, the
/// command line) number them from 1.
class ModelSpec {
 public:
  ModelSpec(std::vector<int> weights, std::vector<Rational> z);

  /// Reads {"weights":[...], "z":["p/q", ...]}. Throws ParseError on
  /// malformed JSON or rationals, DomainError on invariant violations.
  static ModelSpec from_json(std::string_view text);
  std::string to_json() const;

  std::size_t n_sites() const noexcept { return weights_.size(); }
  std::span<const int> weights() const noexcept { return weights_; }
  std::span<const Rational> z() const noexcept { return z_; }
  int weight(std::size_t i) const { return weights_.at(i); }
  const Rational& z(std::size_t i) const { return z_.at(i); }

  /// Σλ_i, the largest spin deviation.
  int total_weight() const noexcept { return total_weight_; }
  int min_weight() const noexcept { return min_weight_; }

 private:
  std::vector<int> weights_;
  std::vector<Rational> z_;
  int total_weight_ = 0;
  int min_weight_ = 0;
};

}  // namespace gaudin
