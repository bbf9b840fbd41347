#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gaudin/model.hpp"
#include "gaudin/rational.hpp"

namespace gaudin {

/// Occupation vector (n_1, ..., n_N) labelling F^{n_1} v ⊗ ... ⊗ F^{n_N} v.
/// Only states with 0 <= n_i <= λ_i are ever built.
using BasisState = std::vector<int>;

int spin_deviation(const BasisState& s);

/// All basis states of spin deviation m, in lexicographic order.
class WeightSpace {
 public:
  /// Throws DomainError unless 0 <= m <= Σλ.
  WeightSpace(std::span<const int> weights, int m);
  WeightSpace(const ModelSpec& spec, int m) : WeightSpace(spec.weights(), m) {}

  /// The zero space at a degree just outside [0, Σλ] (m = -1 or Σλ+1).
  static WeightSpace empty(std::size_t n_sites, int m);

  /// Weight space at degree m, or the zero space when m is one step past
  /// either end of the range.
  static WeightSpace at_or_empty(std::span<const int> weights, int m);

  int degree() const noexcept { return m_; }
  std::size_t n_sites() const noexcept { return n_sites_; }
  std::size_t size() const noexcept { return states_.size(); }
  bool is_empty() const noexcept { return states_.empty(); }
  const std::vector<BasisState>& states() const noexcept { return states_; }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> find(const BasisState& s) const;
  /// Throws DomainError when s is not in this space.
  std::size_t index_of(const BasisState& s) const;

 private:
  WeightSpace() = default;
  int m_ = 0;
  std::size_t n_sites_ = 0;
  std::vector<BasisState> states_;
};

inline WeightSpace enumerate_weight_space(const ModelSpec& spec, int m) {
  return WeightSpace(spec, m);
}

enum class Generator { E, F, H };

struct SiteAction {
  Rational coefficient;
  BasisState state;
};

/// X^{(site)} applied to a basis state: H gives (λ-2n) on the same state,
/// E gives n(λ-n+1) on n-1, F gives 1 on n+1. Absent when the image is zero.
std::optional<SiteAction> apply_site_generator(Generator gen, std::size_t site, const BasisState& state,
                                               std::span<const int> weights);

/// ‖F^{n_1}v ⊗ ... ⊗ F^{n_N}v‖² for the contravariant form with E† = F:
/// Π_i n_i! λ_i! / (λ_i - n_i)!.
Rational contravariant_norm2(const BasisState& s, std::span<const int> weights);

}  // namespace gaudin
