#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gaudin/model.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/sparse.hpp"

namespace gaudin {

/// Coefficients of the two-factor Gordan-type operator
///   c_k = (-1)^k C(m,k) (m-k-λ2)_k / (-λ1)_k,  k = 0..m,
/// which make Σ_k c_k F^k v_{λ1} ⊗ F^{m-k} v_{λ2} singular.
struct GordanCoefficients {
  int m = 0;
  int lambda1 = 0;
  int lambda2 = 0;
  std::vector<Rational> coeffs;
};

/// Throws SingularCoefficientError when λ1 < m (a zero factor in (-λ1)_k).
GordanCoefficients gordan_coefficients(int m, int lambda1, int lambda2);

/// Gordan-type operator on Ω^{N-1} ⊗ V_{λ_N}: maps u ∈ V_d(Ω^{N-1}) of
/// sl(2)-weight μ = Σ_{i<N} λ_i - 2d to
///   Σ_{j=0}^{k} c_j F_total^j u ⊗ F^{k-j} v_{λ_N}   ∈ V_{d+k}(Ω^N),
/// with c = gordan_coefficients(k, μ, λ_N) and F_total acting on the first
/// N-1 sites. `weights` are the N weights; u is indexed by the weight space
/// of the first N-1 of them.
ExactVector apply_gordan_operator(std::span<const int> weights, int k, const ExactVector& u, int u_degree);

struct SingularVector {
  std::vector<int> composition;  // (k_1, ..., k_{N-1}); empty for kernel vectors
  ExactVector coords;            // over WeightSpace(spec, m)
};

struct SingularBasis {
  enum class Method { Gordan, Kernel };
  int m = 0;
  Method method = Method::Kernel;
  std::vector<SingularVector> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
};

/// Ordered tuples of `parts` nonnegative integers summing to m, lexicographic.
std::vector<std::vector<int>> compositions(int m, int parts);

/// One vector per composition of m into N-1 parts, built by nesting the
/// Gordan-type operator site by site. Requires m <= min λ_i; otherwise
/// throws UnsupportedRegimeError.
SingularBasis singular_basis_gordan(const ModelSpec& spec, int m);

/// Exact basis of ker(E_total : V_m → V_{m-1}) in reduced echelon form.
SingularBasis singular_basis_kernel(const ModelSpec& spec, int m);

/// E_total v = 0, exactly.
bool is_singular(std::span<const int> weights, int m, const ExactVector& v);

}  // namespace gaudin
