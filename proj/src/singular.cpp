#include "gaudin/singular.hpp"

#include <numeric>
#include <string>

#include "gaudin/errors.hpp"
#include "gaudin/exact_linalg.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/weight_space.hpp"

namespace gaudin {

GordanCoefficients gordan_coefficients(int m, int lambda1, int lambda2) {
  if (m < 0) throw DomainError("Gordan degree must be nonnegative");
  if (lambda1 < m) {
    throw SingularCoefficientError("Gordan coefficients undefined for lambda1 = " + std::to_string(lambda1) +
                                   " < m = " + std::to_string(m));
  }
  GordanCoefficients g{m, lambda1, lambda2, {}};
  g.coeffs.reserve(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    Rational c = binomial(m, k) * pochhammer(Rational(m - k - lambda2), k) / pochhammer(Rational(-lambda1), k);
    if (k % 2 == 1) c = -c;
    g.coeffs.push_back(c);
  }
  return g;
}

ExactVector apply_gordan_operator(std::span<const int> weights, int k, const ExactVector& u, int u_degree) {
  if (weights.size() < 2) throw DomainError("Gordan operator needs at least two factors");
  if (k < 0) throw DomainError("Gordan degree must be nonnegative");
  const auto prefix = weights.first(weights.size() - 1);
  const int last = weights.back();
  const int prefix_total = std::accumulate(prefix.begin(), prefix.end(), 0);
  const WeightSpace u_space(prefix, u_degree);
  if (u.size() != u_space.size()) throw DomainError("vector does not match the factor weight space");
  bool nonzero = false;
  for (const auto& x : u) nonzero = nonzero || sgn(x) != 0;
  if (!nonzero) throw DomainError("Gordan operator applied to the zero vector");

  const int mu = prefix_total - 2 * u_degree;
  const GordanCoefficients g = gordan_coefficients(k, mu, last);

  const WeightSpace target(weights, u_degree + k);
  ExactVector out(target.size(), Rational(0));
  ExactVector cur = u;  // F_total^j u on the first N-1 sites
  for (int j = 0; j <= k; ++j) {
    const int d = u_degree + j;
    const int tail = k - j;
    if (tail <= last) {
      const WeightSpace cur_space(prefix, d);
      for (std::size_t s = 0; s < cur_space.size(); ++s) {
        if (sgn(cur[s]) == 0) continue;
        BasisState state = cur_space[s];
        state.push_back(tail);
        out[target.index_of(state)] += g.coeffs[static_cast<std::size_t>(j)] * cur[s];
      }
    }
    if (j == k) break;
    if (d + 1 > prefix_total) break;  // F_total^{j+1} u = 0
    cur = total_generator<Rational>(Generator::F, prefix, d).apply(cur);
  }
  return out;
}

std::vector<std::vector<int>> compositions(int m, int parts) {
  std::vector<std::vector<int>> out;
  if (parts <= 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

SingularBasis singular_basis_gordan(const ModelSpec& spec, int m) {
  if (m < 0 || m > spec.total_weight()) throw DomainError("spin deviation out of range");
  if (m > spec.min_weight()) {
    throw UnsupportedRegimeError("Gordan construction is only supported for m <= min(lambda) = " +
                                 std::to_string(spec.min_weight()) + "; use the kernel basis");
  }
  SingularBasis basis;
  basis.m = m;
  basis.method = SingularBasis::Method::Gordan;
  const auto weights = spec.weights();
  for (const auto& comp : compositions(m, static_cast<int>(spec.n_sites()) - 1)) {
    ExactVector u{Rational(1)};  // v_{λ_1}
    int degree = 0;
    for (std::size_t site = 1; site < spec.n_sites(); ++site) {
      const int k = comp[site - 1];
      u = apply_gordan_operator(weights.first(site + 1), k, u, degree);
      degree += k;
    }
    basis.vectors.push_back({comp, std::move(u)});
  }
  return basis;
}

SingularBasis singular_basis_kernel(const ModelSpec& spec, int m) {
  SingularBasis basis;
  basis.m = m;
  basis.method = SingularBasis::Method::Kernel;
  for (auto& v : nullspace(build_total_generator(Generator::E, spec, m))) basis.vectors.push_back({{}, std::move(v)});
  return basis;
}

bool is_singular(std::span<const int> weights, int m, const ExactVector& v) {
  const auto image = total_generator<Rational>(Generator::E, weights, m).apply(v);
  for (const auto& x : image) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

}  // namespace gaudin
