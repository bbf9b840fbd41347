#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gaudin/model.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/sparse.hpp"

namespace gaudin {

/// The N Gaudin Hamiltonians restricted to one weight space V_m.
struct HamiltonianFamily {
  int m = 0;
  std::vector<ExactOperator> matrices;  // matrices[i] is H_i on V_m
};

HamiltonianFamily build_family(const ModelSpec& spec, int m);

/// ½ Σ_{j≠i} λ_i λ_j / (z_i - z_j), the eigenvalue of H_i on the vacuum.
Rational vacuum_eigenvalue(const ModelSpec& spec, std::size_t i);

struct FamilyReport {
  int m = 0;
  bool commuting = true;         // [H_i, H_j] = 0 for all i, j
  bool sum_zero = true;          // Σ_i H_i = 0
  bool symmetry_commute = true;  // H_i intertwines E, F and commutes with H_total
  std::vector<std::string> failures;  // names of violated identities, 1-based sites

  bool all_pass() const noexcept { return commuting && sum_zero && symmetry_commute; }
};

/// Exact check of the Gaudin relations on V_m. Never throws for a false
/// identity; only for an invalid degree.
FamilyReport verify_family(const ModelSpec& spec, int m);

/// Same checks on supplied matrices. `below` is the family on V_{m-1}
/// (absent for m = 0); it is needed for the E/F intertwining checks.
FamilyReport verify_family(const ModelSpec& spec, const HamiltonianFamily& at_m,
                           const std::optional<HamiltonianFamily>& below);

/// Rank over Q of the N Hamiltonians viewed as operators on V_0 ⊕ ... ⊕ V_{m_max}.
std::size_t independent_hamiltonian_count(const ModelSpec& spec, int m_max);

}  // namespace gaudin
