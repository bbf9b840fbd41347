#include "gaudin/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaudin/errors.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/numeric.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/singular.hpp"
#include "gaudin/weight_space.hpp"

namespace gaudin {

std::size_t EigenLevel::n_singular() const {
  return static_cast<std::size_t>(
      std::count_if(vectors.begin(), vectors.end(), [](const EigenVector& v) { return v.origin.is_singular(); }));
}

bool NonsingularityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const NonsingularityCheck& c) { return c.pass; });
}

namespace {

constexpr int kMaxRefineDepth = 24;

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXd random_combination(const std::vector<Eigen::MatrixXd>& ms, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ms.front().rows(), ms.front().cols());
  for (const auto& m : ms) a += normal(rng) * m;
  return a;
}

double family_scale(const std::vector<Eigen::MatrixXd>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s = std::max(s, m.norm());
  return s > 0.0 ? s : 1.0;
}

// Splits the invariant subspace spanned by the orthonormal columns of `v`
// into joint eigenspaces of the symmetric family `ms`.
void refine(const std::vector<Eigen::MatrixXd>& ms, const Eigen::MatrixXd& v, double scale, std::mt19937_64& rng,
            int depth, std::vector<Eigen::VectorXd>& out) {
  const Eigen::Index c = v.cols();
  if (c == 1) {
    out.push_back(v.col(0));
    return;
  }
  std::vector<Eigen::MatrixXd> restricted;
  bool scalar = true;
  for (const auto& m : ms) {
    Eigen::MatrixXd r = symmetrized(v.transpose() * m * v);
    const double mean = r.trace() / static_cast<double>(c);
    if ((r - mean * Eigen::MatrixXd::Identity(c, c)).norm() > 1e-10 * scale) scalar = false;
    restricted.push_back(std::move(r));
  }
  if (scalar || depth >= kMaxRefineDepth) {
    for (Eigen::Index j = 0; j < c; ++j) out.push_back(v.col(j));
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(random_combination(restricted, rng));
  const auto& vals = es.eigenvalues();
  const double gap = 1e-8 * scale * std::sqrt(static_cast<double>(ms.size()));
  Eigen::Index start = 0;
  for (Eigen::Index j = 1; j <= c; ++j) {
    if (j == c || vals(j) - vals(j - 1) > gap) {
      // An unsplit block is retried with a fresh combination.
      refine(ms, v * es.eigenvectors().middleCols(start, j - start), scale, rng, depth + 1, out);
      start = j;
    }
  }
}

std::vector<ComplexOperator> complex_family(const ModelSpec& spec, int m) {
  std::vector<ComplexOperator> hs;
  for (std::size_t i = 0; i < spec.n_sites(); ++i) hs.push_back(to_complex(build_hamiltonian(spec, i, m)));
  return hs;
}

std::vector<std::complex<double>> as_complex(const std::vector<Rational>& xs) {
  std::vector<std::complex<double>> out;
  for (const auto& x : xs) out.emplace_back(x.get_d(), 0.0);
  return out;
}

}  // namespace

std::vector<EigenVector> diagonalize_singular(const ModelSpec& spec, int m, const EigenOptions& opts,
                                              std::mt19937_64& rng) {
  const SingularBasis kernel = singular_basis_kernel(spec, m);
  std::vector<EigenVector> result;
  const auto k = static_cast<Eigen::Index>(kernel.size());
  if (k == 0) return result;

  const WeightSpace space(spec, m);
  const auto d = static_cast<Eigen::Index>(space.size());
  Eigen::VectorXd sqrt_g(d);
  for (Eigen::Index s = 0; s < d; ++s) {
    sqrt_g(s) = std::sqrt(contravariant_norm2(space[static_cast<std::size_t>(s)], spec.weights()).get_d());
  }

  // Orthonormal frame Q of G^{1/2} Sing V_m; W = G^{-1/2} Q maps frame
  // coordinates back to basis-state coordinates.
  Eigen::MatrixXd y(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& b = kernel.vectors[static_cast<std::size_t>(j)].coords;
    for (Eigen::Index s = 0; s < d; ++s) y(s, j) = sqrt_g(s) * b[static_cast<std::size_t>(s)].get_d();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  const Eigen::MatrixXd w = sqrt_g.cwiseInverse().asDiagonal() * q;

  const HamiltonianFamily exact = build_family(spec, m);
  std::vector<ComplexOperator> hs;
  std::vector<Eigen::MatrixXd> ms;
  for (const auto& h : exact.matrices) {
    hs.push_back(to_complex(h));
    const Eigen::MatrixXd hw = to_dense_real(h) * w;
    ms.push_back(symmetrized(q.transpose() * sqrt_g.asDiagonal() * hw));
  }
  const double scale = family_scale(ms);

  auto assemble = [&](const std::vector<Eigen::VectorXd>& frame_vectors) {
    std::vector<EigenVector> out;
    for (const auto& u : frame_vectors) {
      EigenVector ev;
      ev.m = m;
      Eigen::VectorXd x = w * u;
      x /= x.norm();
      ev.coords = x.cast<std::complex<double>>();
      const Eigen::VectorXd un = u / u.norm();
      for (const auto& mi : ms) ev.eigenvalues.emplace_back(un.dot(mi * un), 0.0);
      ev.origin = {m, 0};
      ev.residual = eigen_residual(hs, ev.coords, ev.eigenvalues);
      out.push_back(std::move(ev));
    }
    return out;
  };
  auto worst = [](const std::vector<EigenVector>& vs) {
    double r = 0.0;
    for (const auto& v : vs) r = std::max(r, v.residual);
    return r;
  };

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(random_combination(ms, rng));
  std::vector<Eigen::VectorXd> candidates;
  for (Eigen::Index j = 0; j < k; ++j) candidates.push_back(es.eigenvectors().col(j));
  result = assemble(candidates);

  if (worst(result) > opts.tol) {
    std::vector<Eigen::VectorXd> refined;
    refine(ms, Eigen::MatrixXd::Identity(k, k), scale, rng, 0, refined);
    auto second = assemble(refined);
    if (worst(second) > opts.tol) {
      throw DiagonalizationFailure("simultaneous diagonalization on Sing V_" + std::to_string(m) +
                                       " did not reach the residual tolerance",
                                   worst(second));
    }
    result = std::move(second);
  }

  if (k == 1) {
    // One-dimensional singular space: eigenvalues are exact ratios.
    const ExactVector& b = kernel.vectors.front().coords;
    const auto p = static_cast<std::size_t>(std::find_if(b.begin(), b.end(), [](const Rational& x) { return sgn(x) != 0; }) - b.begin());
    std::vector<Rational> exact_vals;
    for (const auto& h : exact.matrices) exact_vals.push_back(h.apply(b)[p] / b[p]);
    result.front().eigenvalues = as_complex(exact_vals);
    result.front().exact_eigenvalues = std::move(exact_vals);
    result.front().residual = eigen_residual(hs, result.front().coords, result.front().eigenvalues);
  }
  return result;
}

std::vector<EigenVector> diagonalize_singular(const ModelSpec& spec, int m, const EigenOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  return diagonalize_singular(spec, m, opts, rng);
}

EigenBasis build_eigenbasis(const ModelSpec& spec, int m_max, const EigenOptions& opts) {
  if (m_max < 0) throw DomainError("m_max must be nonnegative");
  if (m_max > spec.min_weight()) {
    throw UnsupportedRegimeError("eigenbasis recursion requires m_max <= min(lambda) = " +
                                 std::to_string(spec.min_weight()));
  }
  std::mt19937_64 rng(opts.seed);
  EigenBasis basis;

  {
    EigenLevel level0;
    level0.m = 0;
    EigenVector vac;
    vac.m = 0;
    vac.coords = Eigen::VectorXcd::Ones(1);
    std::vector<Rational> exact_vals;
    for (std::size_t i = 0; i < spec.n_sites(); ++i) exact_vals.push_back(vacuum_eigenvalue(spec, i));
    vac.eigenvalues = as_complex(exact_vals);
    vac.exact_eigenvalues = std::move(exact_vals);
    vac.origin = {0, 0};
    vac.residual = eigen_residual(complex_family(spec, 0), vac.coords, vac.eigenvalues);
    level0.vectors.push_back(std::move(vac));
    level0.min_singular_value = 1.0;
    basis.levels.push_back(std::move(level0));
  }

  for (int m = 1; m <= m_max; ++m) {
    EigenLevel level;
    level.m = m;
    const ComplexOperator f = to_complex(build_total_generator(Generator::F, spec, m - 1));
    const auto hs = complex_family(spec, m);
    const auto& prev = basis.levels.back().vectors;
    for (std::size_t idx = 0; idx < prev.size(); ++idx) {
      EigenVector ev;
      ev.m = m;
      Eigen::VectorXcd x = apply_dense(f, prev[idx].coords);
      const double norm = x.norm();
      if (norm == 0.0) {
        throw CompletenessFailure("F_total annihilated an eigenvector of V_" + std::to_string(m - 1), 0.0);
      }
      ev.coords = x / norm;
      ev.eigenvalues = prev[idx].eigenvalues;
      ev.exact_eigenvalues = prev[idx].exact_eigenvalues;
      ev.origin = {prev[idx].origin.singular_level, prev[idx].origin.lowerings + 1};
      ev.parent = idx;
      ev.residual = eigen_residual(hs, ev.coords, ev.eigenvalues);
      if (ev.residual > opts.tol) {
        throw DiagonalizationFailure("lowered eigenvector in V_" + std::to_string(m) + " exceeds residual tolerance",
                                     ev.residual);
      }
      level.vectors.push_back(std::move(ev));
    }
    for (auto& ev : diagonalize_singular(spec, m, opts, rng)) level.vectors.push_back(std::move(ev));

    const std::size_t dim = WeightSpace(spec, m).size();
    std::vector<Eigen::VectorXcd> columns;
    for (const auto& v : level.vectors) columns.push_back(v.coords);
    level.min_singular_value = min_singular_value(columns);
    if (level.vectors.size() != dim || level.min_singular_value <= opts.tol_rank) {
      throw CompletenessFailure("eigenbasis of V_" + std::to_string(m) + " is incomplete: " +
                                    std::to_string(level.vectors.size()) + " vectors for dimension " +
                                    std::to_string(dim),
                                level.min_singular_value);
    }
    basis.levels.push_back(std::move(level));
  }
  return basis;
}

NonsingularityReport verify_nonsingularity(const ModelSpec& spec, const EigenBasis& basis, int m, double tol) {
  if (m < 1 || static_cast<std::size_t>(m) >= basis.levels.size()) {
    throw DomainError("eigenbasis not built through level " + std::to_string(m));
  }
  NonsingularityReport rep;
  rep.m = m;
  const ComplexOperator e = to_complex(build_total_generator(Generator::E, spec, m));
  const ComplexOperator f = to_complex(build_total_generator(Generator::F, spec, m - 1));
  const auto& level = basis.levels[static_cast<std::size_t>(m)].vectors;
  const auto& prev = basis.levels[static_cast<std::size_t>(m - 1)].vectors;
  for (std::size_t idx = 0; idx < level.size(); ++idx) {
    const auto& v = level[idx];
    if (v.origin.is_singular() || !v.parent) continue;
    NonsingularityCheck c;
    c.index = idx;
    c.k = v.origin.lowerings - 1;
    c.expected_scalar = static_cast<double>((c.k + 1) * (spec.total_weight() - 2 * (m - 1) + c.k));
    const Eigen::VectorXcd& p = prev.at(*v.parent).coords;
    const double lowered_norm = apply_dense(f, p).norm();
    const Eigen::VectorXcd expected = (c.expected_scalar / lowered_norm) * p;
    c.relative_error = (apply_dense(e, v.coords) - expected).norm() / expected.norm();
    c.pass = c.expected_scalar > 0.0 && c.relative_error <= tol;
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace gaudin
