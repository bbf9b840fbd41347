#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gaudin/eigenbasis.hpp"
#include "gaudin/model.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/sparse.hpp"

namespace gaudin {

using Complex = std::complex<double>;

/// Floating-point view of a Gaudin model for the Bethe Ansatz. Unlike
/// ModelSpec, site parameters may be complex.
class BetheModel {
 public:
  BetheModel(std::vector<int> weights, std::vector<Complex> z);
  static BetheModel from_spec(const ModelSpec& spec);

  std::size_t n_sites() const noexcept { return weights_.size(); }
  std::span<const int> weights() const noexcept { return weights_; }
  std::span<const Complex> z() const noexcept { return z_; }
  int total_weight() const noexcept { return total_weight_; }
  /// max |z_i - z_j|, used to scale tolerances and initial guesses.
  double spread() const noexcept { return spread_; }
  Complex centroid() const noexcept { return centroid_; }

 private:
  std::vector<int> weights_;
  std::vector<Complex> z_;
  int total_weight_ = 0;
  double spread_ = 1.0;
  Complex centroid_{};
};

/// F(w) = Σ_k F^{(k)}/(w - z_k) on V_m → V_{m+1}. DomainError at a pole.
ComplexOperator lowering_field(const BetheModel& model, Complex w, int m);
ExactOperator lowering_field(const ModelSpec& spec, const Rational& w, int m);

/// ψ_m = F(w_1) ... F(w_m) v_0 over WeightSpace(weights, m). Roots must be
/// pairwise distinct and away from every z_k (DomainError otherwise).
Eigen::VectorXcd bethe_vector(const BetheModel& model, std::span<const Complex> roots);

/// f_k = Σ_j λ_j/(w_k - z_j) + Σ_{l≠k} 2/(w_l - w_k), k = 1..m.
std::vector<Complex> bethe_residual(const BetheModel& model, std::span<const Complex> roots);

/// s_i = ½ Σ_{j≠i} λ_iλ_j/(z_i - z_j) + Σ_k λ_i/(w_k - z_i).
std::vector<Complex> bethe_eigenvalues(const BetheModel& model, std::span<const Complex> roots);

/// Coefficients (constant term first) of Σ_k λ_k Π_{j≠k}(w - z_j), whose
/// roots are the m = 1 Bethe roots.
std::vector<Complex> bethe_polynomial(const BetheModel& model);

struct BetheOptions {
  double tol_root = 1e-11;   // max |f_k| for an accepted solution
  double dedup_tol = 1e-8;   // multiset distance below which solutions coincide
  double tol = 1e-9;         // singular/eigen residual bound used by verification
  std::size_t n_starts = 0;  // 0 selects 200 · C(m+N-2, m)
  std::uint64_t seed = kDefaultSeed;
};

struct BetheSolution {
  std::vector<Complex> roots;  // sorted by real part, then imaginary part
  double residual_eq = 0.0;
  std::vector<Complex> eigenvalues;
  double vector_residual = 0.0;    // max_i ‖H_i ψ - s_i ψ‖ / ‖ψ‖
  double singular_residual = 0.0;  // ‖E_total ψ‖ / ‖ψ‖
  bool multiplicity_flag = false;  // root coalescence or a singular Jacobian
};

struct BetheReport {
  int m = 0;
  std::vector<BetheSolution> solutions;
  std::size_t expected_count = 0;  // C(m+N-2, m)
  std::size_t found() const noexcept { return solutions.size(); }
};

/// m = 1: roots of bethe_polynomial via companion-matrix eigenvalues.
/// m >= 2: seeded multi-start Newton on the pole-cleared system, polished
/// on the original equations and deduplicated as multisets.
/// Never asserts completeness; the report carries found vs expected.
BetheReport solve_bethe(const BetheModel& model, int m, const BetheOptions& opts = {});

struct SolutionCheck {
  double singular_residual = 0.0;
  double vector_residual = 0.0;
  bool singular = false;
  bool eigen = false;
  bool pass() const noexcept { return singular && eigen; }
};

/// Recomputes ψ_m and checks ‖E ψ‖ <= tol ‖ψ‖ and ‖H_i ψ - s_i ψ‖ <= tol ‖ψ‖.
SolutionCheck verify_solution(const BetheModel& model, std::span<const Complex> roots, double tol);

/// Agreement between Bethe solutions and the singular eigenvectors of V_m.
struct CrossCheck {
  bool applicable = false;           // found == expected == dim Sing V_m
  double eigenvalue_deviation = 0;   // max over matched tuples of max_i |s_i - s_i'|
  double span_deviation = 0;         // max distance of a unit Bethe vector from Sing V_m
  double min_singular_value = 0;     // of the normalized Bethe vectors
};

CrossCheck cross_validate(const ModelSpec& spec, const BetheReport& report,
                          const std::vector<EigenVector>& singular_eigenvectors);

/// Max over a minimal-cost matching of two tuple multisets (greedy by
/// nearest remaining tuple) of the ∞-distance; +inf when sizes differ.
double multiset_tuple_distance(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b);

}  // namespace gaudin
