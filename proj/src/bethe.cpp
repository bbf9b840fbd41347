#include "gaudin/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "gaudin/errors.hpp"
#include "gaudin/numeric.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/singular.hpp"
#include "gaudin/weight_space.hpp"

namespace gaudin {

BetheModel::BetheModel(std::vector<int> weights, std::vector<Complex> z) : weights_(std::move(weights)), z_(std::move(z)) {
  if (weights_.size() < 2 || weights_.size() != z_.size()) {
    throw DomainError("Bethe model needs N >= 2 weights and matching site parameters");
  }
  for (int w : weights_) {
    if (w < 1) throw DomainError("highest weights must be positive integers");
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    for (std::size_t j = i + 1; j < z_.size(); ++j) {
      const double d = std::abs(z_[i] - z_[j]);
      if (d == 0.0) throw DomainError("site parameters must be pairwise distinct");
      spread = std::max(spread, d);
    }
  }
  spread_ = spread;
  total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0);
  centroid_ = std::accumulate(z_.begin(), z_.end(), Complex{}) / static_cast<double>(z_.size());
}

BetheModel BetheModel::from_spec(const ModelSpec& spec) {
  std::vector<Complex> z;
  for (const auto& q : spec.z()) z.emplace_back(q.get_d(), 0.0);
  return BetheModel(std::vector<int>(spec.weights().begin(), spec.weights().end()), std::move(z));
}

ComplexOperator lowering_field(const BetheModel& model, Complex w, int m) {
  return lowering_field<Complex>(model.weights(), model.z(), w, m);
}

ExactOperator lowering_field(const ModelSpec& spec, const Rational& w, int m) {
  return lowering_field<Rational>(spec.weights(), spec.z(), w, m);
}

Eigen::VectorXcd bethe_vector(const BetheModel& model, std::span<const Complex> roots) {
  const int m = static_cast<int>(roots.size());
  if (m > model.total_weight()) throw DomainError("more Bethe roots than the largest spin deviation");
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (std::size_t l = k + 1; l < roots.size(); ++l) {
      if (roots[k] == roots[l]) throw DomainError("Bethe roots must be pairwise distinct");
    }
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (int d = 0; d < m; ++d) {
    psi = apply_dense(lowering_field(model, roots[static_cast<std::size_t>(m - 1 - d)], d), psi);
  }
  return psi;
}

std::vector<Complex> bethe_residual(const BetheModel& model, std::span<const Complex> roots) {
  const auto z = model.z();
  const auto lambda = model.weights();
  std::vector<Complex> f(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Complex s{};
    for (std::size_t j = 0; j < z.size(); ++j) {
      const Complex d = roots[k] - z[j];
      if (d == Complex{}) throw DomainError("Bethe root coincides with z" + std::to_string(j + 1));
      s += static_cast<double>(lambda[j]) / d;
    }
    for (std::size_t l = 0; l < roots.size(); ++l) {
      if (l == k) continue;
      const Complex d = roots[l] - roots[k];
      if (d == Complex{}) throw DomainError("Bethe roots must be pairwise distinct");
      s += 2.0 / d;
    }
    f[k] = s;
  }
  return f;
}

std::vector<Complex> bethe_eigenvalues(const BetheModel& model, std::span<const Complex> roots) {
  const auto z = model.z();
  const auto lambda = model.weights();
  std::vector<Complex> s(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Complex v{};
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i) v += 0.5 * static_cast<double>(lambda[i] * lambda[j]) / (z[i] - z[j]);
    }
    for (const auto& w : roots) v += static_cast<double>(lambda[i]) / (w - z[i]);
    s[i] = v;
  }
  return s;
}

std::vector<Complex> bethe_polynomial(const BetheModel& model) {
  using LComplex = std::complex<long double>;
  const auto z = model.z();
  const std::size_t n = z.size();
  std::vector<LComplex> total(n, LComplex{});  // degree n-1
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<LComplex> p{LComplex(static_cast<long double>(model.weights()[k]))};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      std::vector<LComplex> next(p.size() + 1, LComplex{});
      const LComplex zj(z[j].real(), z[j].imag());
      for (std::size_t c = 0; c < p.size(); ++c) {
        next[c + 1] += p[c];
        next[c] -= zj * p[c];
      }
      p = std::move(next);
    }
    for (std::size_t c = 0; c < p.size(); ++c) total[c] += p[c];
  }
  std::vector<Complex> out;
  for (const auto& c : total) out.emplace_back(static_cast<double>(c.real()), static_cast<double>(c.imag()));
  return out;
}

namespace {

struct Dual {
  Complex v;
  Complex d{};
};
inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a, Complex b) { return {a.v - b, a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
inline Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }

// Bethe equations multiplied through by Π_j(w_k - z_j) Π_{l≠k}(w_l - w_k):
//   g_k = Σ_j λ_j Π_{j'≠j}(w_k - z_j') Π_{l≠k}(w_l - w_k)
//       + Σ_{l≠k} 2 Π_j(w_k - z_j) Π_{l'≠k,l}(w_l' - w_k).
template <class T>
std::vector<T> cleared_system(const BetheModel& model, const std::vector<T>& w) {
  const auto z = model.z();
  const auto lambda = model.weights();
  const std::size_t m = w.size();
  const std::size_t n = z.size();
  const T one{Complex(1.0)};
  std::vector<T> g(m);
  for (std::size_t k = 0; k < m; ++k) {
    auto sites_except = [&](std::size_t skip) {
      T p = one;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != skip) p = p * (w[k] - z[j]);
      }
      return p;
    };
    auto roots_except = [&](std::size_t skip) {
      T p = one;
      for (std::size_t l = 0; l < m; ++l) {
        if (l != k && l != skip) p = p * (w[l] - w[k]);
      }
      return p;
    };
    T sites{};
    for (std::size_t j = 0; j < n; ++j) sites = sites + static_cast<double>(lambda[j]) * sites_except(j);
    T result = sites * roots_except(k);
    const T all_sites = sites_except(n);
    for (std::size_t l = 0; l < m; ++l) {
      if (l != k) result = result + 2.0 * (all_sites * roots_except(l));
    }
    g[k] = result;
  }
  return g;
}

bool all_finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

struct NewtonResult {
  std::vector<Complex> roots;
  bool ok = false;
  double jacobian_conditioning = 1.0;  // σ_min / σ_max of ∂f/∂w at the end
};

// Newton on the cleared polynomial system, with dual-number Jacobians.
bool newton_cleared(const BetheModel& model, std::vector<Complex>& w, double radius) {
  const std::size_t m = w.size();
  const auto mi = static_cast<Eigen::Index>(m);
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXcd g(mi);
    Eigen::MatrixXcd jac(mi, mi);
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<Dual> wd(m);
      for (std::size_t i = 0; i < m; ++i) wd[i] = {w[i], i == a ? Complex(1.0) : Complex{}};
      const auto gd = cleared_system(model, wd);
      for (std::size_t k = 0; k < m; ++k) {
        jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = gd[k].d;
        if (a == 0) g(static_cast<Eigen::Index>(k)) = gd[k].v;
      }
    }
    Eigen::VectorXcd step = jac.fullPivLu().solve(g);
    if (!all_finite(step)) return false;
    const double len = step.norm();
    if (len > radius) step *= radius / len;
    double wnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] -= step(static_cast<Eigen::Index>(i));
      wnorm = std::max(wnorm, std::abs(w[i]));
    }
    if (wnorm > 1e8 * radius) return false;
    if (len <= 1e-14 * (1.0 + wnorm)) return true;
  }
  return true;
}

// A few Newton steps on the original equations in extended precision.
NewtonResult polish(const BetheModel& model, std::vector<Complex> w) {
  using LComplex = std::complex<long double>;
  NewtonResult res;
  const std::size_t m = w.size();
  const auto mi = static_cast<Eigen::Index>(m);
  const auto z = model.z();
  const auto lambda = model.weights();
  std::vector<LComplex> lw(w.begin(), w.end());
  Eigen::MatrixXcd last_jac(mi, mi);
  for (int it = 0; it < 8; ++it) {
    Eigen::Matrix<LComplex, Eigen::Dynamic, 1> f(mi);
    Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic> jac(mi, mi);
    jac.setZero();
    for (std::size_t k = 0; k < m; ++k) {
      LComplex s{}, dkk{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        const LComplex d = lw[k] - LComplex(z[j].real(), z[j].imag());
        if (d == LComplex{}) return res;
        s += static_cast<long double>(lambda[j]) / d;
        dkk -= static_cast<long double>(lambda[j]) / (d * d);
      }
      for (std::size_t l = 0; l < m; ++l) {
        if (l == k) continue;
        const LComplex d = lw[l] - lw[k];
        if (d == LComplex{}) return res;
        s += 2.0L / d;
        dkk += 2.0L / (d * d);
        jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = -2.0L / (d * d);
      }
      f(static_cast<Eigen::Index>(k)) = s;
      jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = dkk;
    }
    last_jac = jac.template cast<Complex>();
    const Eigen::Matrix<LComplex, Eigen::Dynamic, 1> step = jac.fullPivLu().solve(f);
    bool finite = true;
    long double len = 0.0L;
    for (Eigen::Index i = 0; i < mi; ++i) {
      finite = finite && std::isfinite(step(i).real()) && std::isfinite(step(i).imag());
      len = std::max(len, std::abs(step(i)));
    }
    if (!finite) break;
    for (std::size_t i = 0; i < m; ++i) lw[i] -= step(static_cast<Eigen::Index>(i));
    if (len == 0.0L) break;
  }
  for (std::size_t i = 0; i < m; ++i) w[i] = Complex(static_cast<double>(lw[i].real()), static_cast<double>(lw[i].imag()));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(last_jac);
  const auto& sv = svd.singularValues();
  res.jacobian_conditioning = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  res.roots = std::move(w);
  res.ok = true;
  return res;
}

struct RootOrder {
  double step;
  bool operator()(const Complex& a, const Complex& b) const {
    const auto ka = std::llround(a.real() / step);
    const auto kb = std::llround(b.real() / step);
    if (ka != kb) return ka < kb;
    return a.imag() < b.imag();
  }
};

double root_multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  if (a.size() <= 6) {
    do {
      double d = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, d);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(b.size(), false);
  double d = 0.0;
  for (const auto& x : a) {
    std::size_t pick = 0;
    double pd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(x - b[j]) < pd) {
        pd = std::abs(x - b[j]);
        pick = j;
      }
    }
    used[pick] = true;
    d = std::max(d, pd);
  }
  return d;
}

bool admissible(const BetheModel& model, const std::vector<Complex>& w, double scale, double dedup) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(w[k].real()) || !std::isfinite(w[k].imag())) return false;
    if (std::abs(w[k] - model.centroid()) > 1e6 * scale) return false;  // drifting to infinity
    for (const auto& zj : model.z()) {
      if (std::abs(w[k] - zj) < 1e-6 * scale) return false;
    }
    for (std::size_t l = k + 1; l < w.size(); ++l) {
      if (std::abs(w[k] - w[l]) < dedup) return false;
    }
  }
  return true;
}

double max_abs(const std::vector<Complex>& v) {
  double r = 0.0;
  for (const auto& x : v) r = std::max(r, std::abs(x));
  return r;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  const auto n = static_cast<Eigen::Index>(deg);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

struct Operators {
  std::vector<ComplexOperator> hs;
  ComplexOperator e;
};

Operators operators_for(const BetheModel& model, int m) {
  Operators ops;
  for (std::size_t i = 0; i < model.n_sites(); ++i) ops.hs.push_back(hamiltonian<Complex>(model.weights(), model.z(), i, m));
  ops.e = total_generator<Complex>(Generator::E, model.weights(), m);
  return ops;
}

SolutionCheck check_with(const BetheModel& model, const Operators& ops, std::span<const Complex> roots, double tol) {
  SolutionCheck c;
  const Eigen::VectorXcd psi = bethe_vector(model, roots);
  const double norm = psi.norm();
  if (norm == 0.0) {
    c.singular_residual = c.vector_residual = std::numeric_limits<double>::infinity();
    return c;
  }
  c.singular_residual = apply_dense(ops.e, psi).norm() / norm;
  const auto s = bethe_eigenvalues(model, roots);
  for (std::size_t i = 0; i < ops.hs.size(); ++i) {
    c.vector_residual = std::max(c.vector_residual, (apply_dense(ops.hs[i], psi) - s[i] * psi).norm() / norm);
  }
  c.singular = c.singular_residual <= tol;
  c.eigen = c.vector_residual <= tol;
  return c;
}

}  // namespace

SolutionCheck verify_solution(const BetheModel& model, std::span<const Complex> roots, double tol) {
  return check_with(model, operators_for(model, static_cast<int>(roots.size())), roots, tol);
}

BetheReport solve_bethe(const BetheModel& model, int m, const BetheOptions& opts) {
  if (m < 1) throw DomainError("solve_bethe needs m >= 1");
  if (m > model.total_weight()) throw DomainError("m exceeds the largest spin deviation");
  const int n = static_cast<int>(model.n_sites());
  BetheReport report;
  report.m = m;
  report.expected_count = static_cast<std::size_t>(binomial(m + n - 2, m).get_d());

  const double scale = std::max(1.0, model.spread());
  const double dedup = opts.dedup_tol * scale;
  const double cluster = std::max(dedup, 1e-6 * scale);
  const RootOrder order{1e-9 * scale};

  struct Candidate {
    std::vector<Complex> roots;
    double residual;
    bool flag;
  };
  std::vector<Candidate> accepted;
  auto accept = [&](std::vector<Complex> roots, bool flag) {
    if (!admissible(model, roots, scale, dedup)) return;
    const double res = max_abs(bethe_residual(model, roots));
    if (!(res <= opts.tol_root)) return;
    std::sort(roots.begin(), roots.end(), order);
    for (auto& a : accepted) {
      const double d = root_multiset_distance(a.roots, roots);
      if (d <= dedup) return;
      if (d <= cluster) {
        // Two numerically distinct solutions that nearly coincide: a
        // degenerate solution split by rounding.
        a.flag = true;
        return;
      }
    }
    accepted.push_back({std::move(roots), res, flag});
  };

  if (m == 1) {
    auto roots = polynomial_roots(bethe_polynomial(model));
    std::sort(roots.begin(), roots.end(), order);
    std::vector<bool> taken(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (taken[i]) continue;
      Complex sum = roots[i];
      std::size_t count = 1;
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (!taken[j] && std::abs(roots[j] - roots[i]) <= cluster) {
          taken[j] = true;
          sum += roots[j];
          ++count;
        }
      }
      Complex r = sum / static_cast<double>(count);
      if (count == 1) {
        const auto p = polish(model, {r});
        if (p.ok) r = p.roots.front();
      }
      accept({r}, count > 1);
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const std::size_t n_starts = opts.n_starts ? opts.n_starts : 200 * report.expected_count;
    const double radius = 2.0 * scale;
    const auto z = model.z();
    for (std::size_t s = 0; s < n_starts; ++s) {
      std::vector<Complex> w(static_cast<std::size_t>(m));
      for (auto& wk : w) {
        if (s % 2 == 0) {
          double total = 0.0;
          Complex bary{};
          for (const auto& zj : z) {
            const double a = expo(rng);
            bary += a * zj;
            total += a;
          }
          wk = bary / total + 0.1 * scale * Complex(normal(rng), normal(rng));
        } else {
          const double r = radius * std::sqrt(unit(rng));
          const double t = 2.0 * M_PI * unit(rng);
          wk = model.centroid() + std::polar(r, t);
        }
      }
      if (!newton_cleared(model, w, radius)) continue;
      const auto p = polish(model, w);
      if (!p.ok) continue;
      accept(p.roots, p.jacobian_conditioning < 1e-6);
    }
  }

  std::sort(accepted.begin(), accepted.end(), [&](const Candidate& a, const Candidate& b) {
    return std::lexicographical_compare(a.roots.begin(), a.roots.end(), b.roots.begin(), b.roots.end(), order);
  });
  const Operators ops = operators_for(model, m);
  for (auto& a : accepted) {
    BetheSolution sol;
    sol.roots = a.roots;
    sol.residual_eq = a.residual;
    sol.eigenvalues = bethe_eigenvalues(model, sol.roots);
    const auto check = check_with(model, ops, sol.roots, opts.tol);
    sol.singular_residual = check.singular_residual;
    sol.vector_residual = check.vector_residual;
    sol.multiplicity_flag = a.flag;
    report.solutions.push_back(std::move(sol));
  }
  return report;
}

double multiset_tuple_distance(const std::vector<std::vector<Complex>>& a,
                               const std::vector<std::vector<Complex>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto dist = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
  };
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t pick = b.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = dist(x, b[j]);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == b.size()) return std::numeric_limits<double>::infinity();
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

CrossCheck cross_validate(const ModelSpec& spec, const BetheReport& report,
                          const std::vector<EigenVector>& singular_eigenvectors) {
  CrossCheck c;
  const SingularBasis kernel = singular_basis_kernel(spec, report.m);
  c.applicable = report.found() == report.expected_count && kernel.size() == report.expected_count &&
                 singular_eigenvectors.size() == kernel.size();
  if (!c.applicable) return c;

  std::vector<std::vector<Complex>> bethe_tuples, eigen_tuples;
  for (const auto& s : report.solutions) bethe_tuples.push_back(s.eigenvalues);
  for (const auto& v : singular_eigenvectors) eigen_tuples.push_back(v.eigenvalues);
  c.eigenvalue_deviation = multiset_tuple_distance(bethe_tuples, eigen_tuples);

  const BetheModel model = BetheModel::from_spec(spec);
  const auto d = static_cast<Eigen::Index>(WeightSpace(spec, report.m).size());
  const auto k = static_cast<Eigen::Index>(kernel.size());
  Eigen::MatrixXcd kb(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index s = 0; s < d; ++s) {
      kb(s, j) = kernel.vectors[static_cast<std::size_t>(j)].coords[static_cast<std::size_t>(s)].get_d();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(kb);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, k);
  std::vector<Eigen::VectorXcd> columns;
  for (const auto& s : report.solutions) {
    Eigen::VectorXcd psi = bethe_vector(model, s.roots);
    psi /= psi.norm();
    c.span_deviation = std::max(c.span_deviation, (psi - q * (q.adjoint() * psi)).norm());
    columns.push_back(std::move(psi));
  }
  c.min_singular_value = min_singular_value(columns);
  return c;
}

}  // namespace gaudin
