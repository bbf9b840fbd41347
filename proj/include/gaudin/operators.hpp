#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <type_traits>

#include "gaudin/errors.hpp"
#include "gaudin/model.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/sparse.hpp"
#include "gaudin/weight_space.hpp"

// Matrix realizations of the sl(2) action on V_{λ_1} ⊗ ... ⊗ V_{λ_N}, the
// Gaudin Hamiltonians and the lowering field F(w). Everything is templated
// on the scalar type so the same assembly serves exact rational checks and
// complex floating-point work (e.g. complex site parameters).

namespace gaudin {

template <class Scalar>
Scalar from_rational(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return Scalar(q.get_d());
  }
}

inline int degree_shift(Generator gen) {
  switch (gen) {
    case Generator::E:
      return -1;
    case Generator::F:
      return 1;
    case Generator::H:
      return 0;
  }
  return 0;
}

/// X^{(site)} as a map V_m → V_{m+shift(X)}. The codomain may be the zero
/// space when it falls one step outside [0, Σλ].
template <class Scalar = Rational>
SparseOperator<Scalar> site_operator(Generator gen, std::size_t site, std::span<const int> weights, int m) {
  const WeightSpace from(weights, m);
  const WeightSpace to = WeightSpace::at_or_empty(weights, m + degree_shift(gen));
  SparseOperator<Scalar> op(to.size(), from.size(), m, to.degree());
  for (std::size_t j = 0; j < from.size(); ++j) {
    std::map<std::size_t, Scalar> col;
    if (auto act = apply_site_generator(gen, site, from[j], weights)) {
      col.emplace(to.index_of(act->state), from_rational<Scalar>(act->coefficient));
    }
    op.set_column(j, col);
  }
  return op;
}

/// Σ_i X^{(i)} on V_m.
template <class Scalar = Rational>
SparseOperator<Scalar> total_generator(Generator gen, std::span<const int> weights, int m) {
  const WeightSpace from(weights, m);
  const WeightSpace to = WeightSpace::at_or_empty(weights, m + degree_shift(gen));
  SparseOperator<Scalar> op(to.size(), from.size(), m, to.degree());
  for (std::size_t j = 0; j < from.size(); ++j) {
    std::map<std::size_t, Scalar> col;
    for (std::size_t site = 0; site < weights.size(); ++site) {
      if (auto act = apply_site_generator(gen, site, from[j], weights)) {
        const Scalar c = from_rational<Scalar>(act->coefficient);
        auto [it, inserted] = col.try_emplace(to.index_of(act->state), c);
        if (!inserted) it->second += c;
      }
    }
    op.set_column(j, col);
  }
  return op;
}

inline ExactOperator build_total_generator(Generator gen, const ModelSpec& spec, int m) {
  return total_generator<Rational>(gen, spec.weights(), m);
}

/// H_i = Σ_{j≠i} (z_i - z_j)^{-1} [½ H^{(i)}H^{(j)} + E^{(i)}F^{(j)} + F^{(i)}E^{(j)}]
/// restricted to V_m, assembled state by state.
template <class Scalar>
SparseOperator<Scalar> hamiltonian(std::span<const int> weights, std::span<const Scalar> z, std::size_t i, int m) {
  if (i >= weights.size() || z.size() != weights.size()) throw DomainError("site index out of range");
  const WeightSpace space(weights, m);
  SparseOperator<Scalar> op(space.size(), space.size(), m, m);
  const Scalar half = from_rational<Scalar>(Rational(1, 2));
  for (std::size_t col_idx = 0; col_idx < space.size(); ++col_idx) {
    const BasisState& s = space[col_idx];
    std::map<std::size_t, Scalar> col;
    auto add = [&](const BasisState& target, const Scalar& value) {
      auto [it, inserted] = col.try_emplace(space.index_of(target), value);
      if (!inserted) it->second += value;
    };
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (j == i) continue;
      const Scalar diff = z[i] - z[j];
      const Scalar c = Scalar(1) / diff;
      // ½ H^{(i)} H^{(j)}
      const int hi = weights[i] - 2 * s[i];
      const int hj = weights[j] - 2 * s[j];
      if (hi * hj != 0) add(s, c * half * from_rational<Scalar>(Rational(hi * hj)));
      // E^{(i)} F^{(j)}
      if (auto f = apply_site_generator(Generator::F, j, s, weights)) {
        if (auto e = apply_site_generator(Generator::E, i, f->state, weights)) {
          add(e->state, c * from_rational<Scalar>(e->coefficient * f->coefficient));
        }
      }
      // F^{(i)} E^{(j)}
      if (auto e = apply_site_generator(Generator::E, j, s, weights)) {
        if (auto f = apply_site_generator(Generator::F, i, e->state, weights)) {
          add(f->state, c * from_rational<Scalar>(e->coefficient * f->coefficient));
        }
      }
    }
    op.set_column(col_idx, col);
  }
  return op;
}

inline ExactOperator build_hamiltonian(const ModelSpec& spec, std::size_t i, int m) {
  return hamiltonian<Rational>(spec.weights(), spec.z(), i, m);
}

/// F(w) = Σ_k F^{(k)} / (w - z_k) as a map V_m → V_{m+1}.
/// Throws DomainError when w coincides with a site parameter.
template <class Scalar>
SparseOperator<Scalar> lowering_field(std::span<const int> weights, std::span<const Scalar> z, const Scalar& w,
                                      int m) {
  std::vector<Scalar> inv(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const Scalar d = w - z[k];
    if (is_zero(d)) throw DomainError("lowering field has a pole at z" + std::to_string(k + 1));
    inv[k] = Scalar(1) / d;
  }
  const WeightSpace from(weights, m);
  const WeightSpace to = WeightSpace::at_or_empty(weights, m + 1);
  SparseOperator<Scalar> op(to.size(), from.size(), m, to.degree());
  for (std::size_t j = 0; j < from.size(); ++j) {
    std::map<std::size_t, Scalar> col;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (auto act = apply_site_generator(Generator::F, k, from[j], weights)) {
        auto [it, inserted] = col.try_emplace(to.index_of(act->state), inv[k]);
        if (!inserted) it->second += inv[k];
      }
    }
    op.set_column(j, col);
  }
  return op;
}

}  // namespace gaudin
