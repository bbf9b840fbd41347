#include "gaudin/gaudin.hpp"

#include <string>

#include "gaudin/errors.hpp"
#include "gaudin/exact_linalg.hpp"

namespace gaudin {

namespace {

std::string site_name(std::size_t i) { return "H_" + std::to_string(i + 1); }

}  // namespace

HamiltonianFamily build_family(const ModelSpec& spec, int m) {
  HamiltonianFamily fam;
  fam.m = m;
  for (std::size_t i = 0; i < spec.n_sites(); ++i) fam.matrices.push_back(build_hamiltonian(spec, i, m));
  return fam;
}

Rational vacuum_eigenvalue(const ModelSpec& spec, std::size_t i) {
  if (i >= spec.n_sites()) throw DomainError("site index out of range");
  Rational s(0);
  for (std::size_t j = 0; j < spec.n_sites(); ++j) {
    if (j == i) continue;
    s += Rational(spec.weight(i) * spec.weight(j)) / (spec.z(i) - spec.z(j));
  }
  return s / 2;
}

FamilyReport verify_family(const ModelSpec& spec, const HamiltonianFamily& at_m,
                           const std::optional<HamiltonianFamily>& below) {
  FamilyReport rep;
  rep.m = at_m.m;
  const auto& hs = at_m.matrices;
  const std::size_t n = hs.size();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!commutator(hs[i], hs[j]).is_zero()) {
        rep.commuting = false;
        rep.failures.push_back("[" + site_name(i) + "," + site_name(j) + "]=0");
      }
    }
  }

  if (n > 0) {
    ExactOperator sum = hs[0];
    for (std::size_t i = 1; i < n; ++i) sum = sum + hs[i];
    if (!sum.is_zero()) {
      rep.sum_zero = false;
      rep.failures.push_back("sum_i H_i=0");
    }
  }

  const int m = at_m.m;
  const ExactOperator h_total = build_total_generator(Generator::H, spec, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!commutator(hs[i], h_total).is_zero()) {
      rep.symmetry_commute = false;
      rep.failures.push_back("[" + site_name(i) + ",H_total]=0");
    }
  }
  if (m > 0) {
    if (!below || below->m != m - 1 || below->matrices.size() != n) {
      throw DomainError("intertwining checks need the family on V_{m-1}");
    }
    const ExactOperator f = build_total_generator(Generator::F, spec, m - 1);  // V_{m-1} → V_m
    const ExactOperator e = build_total_generator(Generator::E, spec, m);      // V_m → V_{m-1}
    for (std::size_t i = 0; i < n; ++i) {
      const auto& lower = below->matrices[i];
      if (!(hs[i] * f == f * lower)) {
        rep.symmetry_commute = false;
        rep.failures.push_back("[" + site_name(i) + ",F_total]=0");
      }
      if (!(e * hs[i] == lower * e)) {
        rep.symmetry_commute = false;
        rep.failures.push_back("[" + site_name(i) + ",E_total]=0");
      }
    }
  }
  return rep;
}

FamilyReport verify_family(const ModelSpec& spec, int m) {
  const HamiltonianFamily at_m = build_family(spec, m);
  std::optional<HamiltonianFamily> below;
  if (m > 0) below = build_family(spec, m - 1);
  return verify_family(spec, at_m, below);
}

std::size_t independent_hamiltonian_count(const ModelSpec& spec, int m_max) {
  ExactMatrix rows(spec.n_sites());
  for (int m = 0; m <= m_max; ++m) {
    const ExactMatrix block = vectorize(build_family(spec, m).matrices);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].insert(rows[i].end(), block[i].begin(), block[i].end());
  }
  return exact_rank(std::move(rows));
}

}  // namespace gaudin
