#include "gaudin/weight_space.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gaudin/errors.hpp"

namespace gaudin {

int spin_deviation(const BasisState& s) { return std::accumulate(s.begin(), s.end(), 0); }

namespace {

void enumerate(std::span<const int> weights, std::size_t site, int remaining, BasisState& current,
               std::vector<BasisState>& out) {
  if (site + 1 == weights.size()) {
    if (remaining <= weights[site]) {
      current[site] = remaining;
      out.push_back(current);
    }
    return;
  }
  const int cap = std::min(weights[site], remaining);
  for (int n = 0; n <= cap; ++n) {
    current[site] = n;
    enumerate(weights, site + 1, remaining - n, current, out);
  }
}

}  // namespace

WeightSpace::WeightSpace(std::span<const int> weights, int m) : m_(m), n_sites_(weights.size()) {
  const int total = std::accumulate(weights.begin(), weights.end(), 0);
  if (m < 0 || m > total) {
    throw DomainError("spin deviation " + std::to_string(m) + " outside [0, " + std::to_string(total) + "]");
  }
  if (weights.empty()) return;
  BasisState current(weights.size(), 0);
  enumerate(weights, 0, m, current, states_);
}

WeightSpace WeightSpace::empty(std::size_t n_sites, int m) {
  WeightSpace w;
  w.m_ = m;
  w.n_sites_ = n_sites;
  return w;
}

WeightSpace WeightSpace::at_or_empty(std::span<const int> weights, int m) {
  const int total = std::accumulate(weights.begin(), weights.end(), 0);
  if (m == -1 || m == total + 1) return empty(weights.size(), m);
  return WeightSpace(weights, m);
}

std::optional<std::size_t> WeightSpace::find(const BasisState& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::size_t WeightSpace::index_of(const BasisState& s) const {
  if (auto i = find(s)) return *i;
  throw DomainError("basis state not in weight space of degree " + std::to_string(m_));
}

std::optional<SiteAction> apply_site_generator(Generator gen, std::size_t site, const BasisState& state,
                                               std::span<const int> weights) {
  if (site >= state.size() || state.size() != weights.size()) {
    throw DomainError("site index out of range");
  }
  const int lambda = weights[site];
  const int n = state[site];
  switch (gen) {
    case Generator::H:
      return SiteAction{Rational(lambda - 2 * n), state};
    case Generator::E: {
      if (n == 0) return std::nullopt;
      BasisState next = state;
      --next[site];
      return SiteAction{Rational(n * (lambda - n + 1)), std::move(next)};
    }
    case Generator::F: {
      if (n >= lambda) return std::nullopt;
      BasisState next = state;
      ++next[site];
      return SiteAction{Rational(1), std::move(next)};
    }
  }
  return std::nullopt;
}

Rational contravariant_norm2(const BasisState& s, std::span<const int> weights) {
  Rational r(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    // n! · λ(λ-1)...(λ-n+1)
    for (int k = 1; k <= s[i]; ++k) r *= Rational(k * (weights[i] - k + 1));
  }
  return r;
}

}  // namespace gaudin
