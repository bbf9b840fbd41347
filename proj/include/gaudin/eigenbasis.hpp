#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaudin/model.hpp"
#include "gaudin/rational.hpp"

namespace gaudin {

inline constexpr std::uint64_t kDefaultSeed = 20010801;

struct EigenOptions {
  double tol = 1e-9;       // relative eigen residual bound
  double tol_rank = 1e-8;  // smallest admissible singular value of a level basis
  std::uint64_t seed = kDefaultSeed;
};

/// Where a common eigenvector came from: F_total^lowerings applied to a
/// singular eigenvector of V_{singular_level}.
struct EigenOrigin {
  int singular_level = 0;
  int lowerings = 0;

  bool is_singular() const noexcept { return lowerings == 0; }
};

struct EigenVector {
  int m = 0;
  Eigen::VectorXcd coords;                             // unit 2-norm, over WeightSpace(spec, m)
  std::vector<std::complex<double>> eigenvalues;       // s_i for H_1..H_N
  std::optional<std::vector<Rational>> exact_eigenvalues;
  EigenOrigin origin;
  std::optional<std::size_t> parent;                   // preimage index in level m-1
  double residual = 0.0;
};

struct EigenLevel {
  int m = 0;
  std::vector<EigenVector> vectors;  // lowered vectors first, then singular ones
  double min_singular_value = 0.0;

  std::size_t n_singular() const;
  std::size_t n_lowered() const { return vectors.size() - n_singular(); }
};

struct EigenBasis {
  std::vector<EigenLevel> levels;  // levels[m]
};

/// Common eigenvectors of H_1..H_N spanning Sing V_m.
///
/// The family is restricted to the exact kernel basis of E_total, written in
/// an orthonormal frame of the contravariant form (where every H_i is real
/// symmetric for real z), and a random real combination Σ t_i H_i is
/// diagonalized. Eigenvalues come from Rayleigh quotients. If a residual
/// exceeds tol, eigenspaces of the combination are refined recursively with
/// fresh combinations. Throws DiagonalizationFailure with the worst residual
/// if that still fails.
std::vector<EigenVector> diagonalize_singular(const ModelSpec& spec, int m, const EigenOptions& opts,
                                              std::mt19937_64& rng);
std::vector<EigenVector> diagonalize_singular(const ModelSpec& spec, int m, const EigenOptions& opts = {});

/// B_0 = {v_0}; B_m = normalize(F_total B_{m-1}) ∪ diagonalize_singular(m).
/// Requires m_max <= min λ (UnsupportedRegimeError). Throws
/// CompletenessFailure if a level is rank deficient.
EigenBasis build_eigenbasis(const ModelSpec& spec, int m_max, const EigenOptions& opts = {});

struct NonsingularityCheck {
  std::size_t index = 0;       // position in the level
  int k = 0;                   // v = F^{k+1} u, u singular at m-1-k
  double expected_scalar = 0;  // (k+1)(Σλ - 2(m-1) + k)
  double relative_error = 0;   // ‖E v - c p‖ / ‖c p‖ with p the preimage
  bool pass = false;
};

struct NonsingularityReport {
  int m = 0;
  std::vector<NonsingularityCheck> checks;
  bool all_pass() const;
};

/// Checks E_total v = (k+1)(Σλ - 2(m-1) + k) F^k u for every lowered vector of
/// level m, with relative error <= tol. Report only.
NonsingularityReport verify_nonsingularity(const ModelSpec& spec, const EigenBasis& basis, int m, double tol = 1e-9);

}  // namespace gaudin
