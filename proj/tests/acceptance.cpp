// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gaudin/bethe.hpp"
#include "gaudin/commands.hpp"
#include "gaudin/eigenbasis.hpp"
#include "gaudin/exact_linalg.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/numeric.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/singular.hpp"
#include "oracle.hpp"

using namespace gaudin;

namespace {

constexpr std::uint64_t kSuiteSeed = 20240611;
constexpr int kSpecs = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

std::vector<ModelSpec> suite_specs() {
  std::mt19937_64 rng(kSuiteSeed);
  std::vector<ModelSpec> specs;
  for (int k = 0; k < kSpecs; ++k) specs.push_back(oracle::random_spec(rng, 2, 5, 4));
  return specs;
}

std::size_t as_size(const Rational& q) { return q.get_num().get_ui(); }

std::size_t sing_count(const ModelSpec& spec, int m) { return as_size(binomial(m + spec.n_sites() - 2, m)); }

std::string tag(const ModelSpec& spec, int m) { return spec.to_json() + " m=" + std::to_string(m); }

Outcome exact_algebra(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::size_t spaces = 0;
  for (const auto& spec : specs) {
    for (int m = 0; m <= spec.min_weight(); ++m) {
      const auto r = verify_family(spec, m);
      ++spaces;
      if (!r.all_pass()) o.fail(tag(spec, m) + " " + (r.failures.empty() ? "" : r.failures.front()));
    }
  }
  o.detail = std::to_string(spaces) + " weight spaces, [H_i,H_j], sum, E/F/H intertwining exact";
  return o;
}

Outcome dimensions(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& spec : specs) {
    for (int m = 0; m <= spec.min_weight(); ++m) {
      ++checked;
      if (WeightSpace(spec, m).size() != as_size(binomial(spec.n_sites() + m - 1, m))) o.fail("dim V " + tag(spec, m));
      if (singular_basis_kernel(spec, m).size() != sing_count(spec, m)) o.fail("dim Sing " + tag(spec, m));
    }
  }
  const ModelSpec small({1, 1}, {Rational(0), Rational(1)});
  const std::size_t below = singular_basis_kernel(small, 2).size();
  if (below != 0) o.fail("N=2 λ=(1,1) m=2 kernel dimension " + std::to_string(below));
  // Every spec with a level past some λ_i must drop below the count there.
  std::size_t strict = 0;
  for (const auto& spec : specs) {
    const int m = spec.min_weight() + 1;
    if (m <= spec.total_weight() && singular_basis_kernel(spec, m).size() < sing_count(spec, m)) ++strict;
  }
  o.detail = std::to_string(checked) + " levels; λ=(1,1) m=2 kernel dim " + std::to_string(below) +
             "; strict drop past min λ on " + std::to_string(strict) + "/" + std::to_string(specs.size()) + " specs";
  return o;
}

Outcome gordan(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::size_t vectors = 0;
  for (const auto& spec : specs) {
    for (int m = 0; m <= spec.min_weight(); ++m) {
      const auto g = singular_basis_gordan(spec, m);
      ExactMatrix stacked;
      for (const auto& v : g.vectors) {
        ++vectors;
        if (!is_singular(spec.weights(), m, v.coords)) o.fail("E v != 0 " + tag(spec, m));
        stacked.push_back(v.coords);
      }
      const std::size_t expected = sing_count(spec, m);
      if (exact_rank(stacked) != expected) o.fail("rank " + tag(spec, m));
      for (const auto& v : singular_basis_kernel(spec, m).vectors) stacked.push_back(v.coords);
      if (exact_rank(stacked) != expected) o.fail("span differs from kernel " + tag(spec, m));
    }
  }
  o.detail = std::to_string(vectors) + " vectors exactly singular, full rank, span = kernel";
  return o;
}

Outcome eigenbasis(const std::vector<ModelSpec>& specs) {
  Outcome o;
  double worst_residual = 0, worst_inherit = 0, smallest_sv = INFINITY;
  std::size_t vectors = 0;
  for (const auto& spec : specs) {
    EigenBasis basis;
    try {
      basis = build_eigenbasis(spec, spec.min_weight());
    } catch (const Error& e) {
      o.fail(spec.to_json() + " " + e.what());
      continue;
    }
    for (const auto& level : basis.levels) {
      if (level.vectors.size() != WeightSpace(spec, level.m).size()) o.fail("count " + tag(spec, level.m));
      smallest_sv = std::min(smallest_sv, level.min_singular_value);
      std::vector<ComplexOperator> hs;
      for (std::size_t i = 0; i < spec.n_sites(); ++i) hs.push_back(to_complex(build_hamiltonian(spec, i, level.m)));
      std::vector<Eigen::VectorXcd> cols;
      for (const auto& v : level.vectors) {
        ++vectors;
        cols.push_back(v.coords);
        worst_residual = std::max(worst_residual, eigen_residual(hs, v.coords, v.eigenvalues));
        if (v.parent) {
          const auto& pre = basis.levels[level.m - 1].vectors[*v.parent];
          const auto rq = rayleigh_quotients(hs, v.coords);
          for (std::size_t i = 0; i < rq.size(); ++i) {
            worst_inherit = std::max(worst_inherit, std::abs(rq[i] - pre.eigenvalues[i]));
          }
        }
      }
      smallest_sv = std::min(smallest_sv, min_singular_value(cols));
    }
  }
  if (worst_residual > 1e-9) o.fail("residual " + format_double(worst_residual));
  if (smallest_sv <= 1e-8) o.fail("min singular value " + format_double(smallest_sv));
  if (worst_inherit > 1e-9) o.fail("inherited eigenvalues " + format_double(worst_inherit));
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu vectors; max residual %.2e, min singular value %.2e, inheritance error %.2e",
                vectors, worst_residual, smallest_sv, worst_inherit);
  o.detail = buf;
  return o;
}

Outcome bethe_desk_scale() {
  Outcome o;
  std::ostringstream d;
  {
    const ModelSpec spec({1, 1}, {Rational(0), Rational(1)});
    const auto model = BetheModel::from_spec(spec);
    const auto r = solve_bethe(model, 1);
    if (r.found() != 1) {
      o.fail("N=2 found " + std::to_string(r.found()));
    } else {
      const auto& s = r.solutions[0];
      const double root_err = std::abs(s.roots[0] - Complex(0.5));
      const double s1_err = std::abs(s.eigenvalues[0] - Complex(1.5));
      const auto psi = bethe_vector(model, s.roots);
      const auto kernel = singular_basis_kernel(spec, 1);
      const auto& k = kernel.vectors.at(0).coords;
      Eigen::VectorXcd exact(2);
      exact << to_double(k[0]), to_double(k[1]);
      const Eigen::VectorXcd u = exact.normalized();
      const double angle = (psi - u * u.dot(psi)).norm() / psi.norm();
      if (root_err > 1e-12) o.fail("root 1/2 error " + format_double(root_err));
      if (s1_err > 1e-12) o.fail("s_1 error " + format_double(s1_err));
      if (angle >= 1e-9) o.fail("angle " + format_double(angle));
      d << "w=" << format_double(s.roots[0].real()) << " s_1=" << format_double(s.eigenvalues[0].real())
        << " angle=" << format_double(angle);
    }
  }
  {
    const BetheModel model({2, 1, 3}, {0.0, 1.0, 2.5});
    const auto r = solve_bethe(model, 1);
    double worst = 0;
    for (const auto& s : r.solutions) worst = std::max({worst, s.singular_residual, s.vector_residual});
    const bool distinct = r.found() == 2 && std::abs(r.solutions[0].roots[0] - r.solutions[1].roots[0]) > 1e-6;
    if (!distinct) o.fail("N=3 generic: found " + std::to_string(r.found()) + " distinct roots");
    if (worst > 1e-9) o.fail("N=3 generic residual " + format_double(worst));
    d << "; N=3 generic " << r.found() << " roots, residual " << format_double(worst);
  }
  {
    // λ=(1,2,3), z=(0,1,4i/3): the m=1 polynomial has a double root (1+i)/3.
    const BetheModel model({1, 2, 3}, {0.0, 1.0, Complex(0.0, 4.0 / 3.0)});
    const auto r = solve_bethe(model, 1);
    const bool flagged = r.found() == 1 && r.solutions[0].multiplicity_flag;
    if (!flagged) o.fail("degenerate case not flagged (found " + std::to_string(r.found()) + ")");
    d << "; degenerate case " << (flagged ? "flagged" : "not flagged");
  }
  o.detail = d.str();
  return o;
}

Outcome cross_route(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::size_t applicable = 0, tried = 0;
  double worst_eig = 0, worst_span = 0;
  for (const auto& spec : specs) {
    const auto model = BetheModel::from_spec(spec);
    for (int m = 1; m <= std::min(2, spec.total_weight()); ++m) {
      ++tried;
      const auto report = solve_bethe(model, m);
      if (report.found() != report.expected_count) continue;
      const auto vs = diagonalize_singular(spec, m);
      const auto cc = cross_validate(spec, report, vs);
      if (!cc.applicable) continue;
      ++applicable;
      worst_eig = std::max(worst_eig, cc.eigenvalue_deviation);
      worst_span = std::max(worst_span, cc.span_deviation);
      if (cc.eigenvalue_deviation > 1e-8) o.fail("eigenvalues " + tag(spec, m));
      if (cc.span_deviation > 1e-8 || cc.min_singular_value <= 1e-8) o.fail("span " + tag(spec, m));
    }
  }
  if (applicable == 0) o.fail("no case reached the expected solution count");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/%zu (spec, m<=2) cases complete; max eigenvalue deviation %.2e, span %.2e",
                applicable, tried, worst_eig, worst_span);
  o.detail = buf;
  return o;
}

Outcome operator_identities(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::mt19937_64 rng(kSuiteSeed + 1);
  std::size_t checks = 0;
  auto off_pole = [&](const ModelSpec& spec, const std::vector<Rational>& avoid) {
    for (;;) {
      const Rational w = oracle::random_rational(rng);
      bool ok = true;
      for (const auto& z : spec.z()) ok = ok && w != z;
      for (const auto& a : avoid) ok = ok && w != a;
      if (ok) return w;
    }
  };
  for (const auto& spec : specs) {
    const int top = spec.total_weight() - 1;
    std::vector<std::vector<ExactOperator>> h(top + 2), hsite(top + 2), fsite(top + 2);
    for (int m = 0; m <= top + 1; ++m) {
      for (std::size_t i = 0; i < spec.n_sites(); ++i) {
        h[m].push_back(build_hamiltonian(spec, i, m));
        hsite[m].push_back(site_operator(Generator::H, i, spec.weights(), m));
        fsite[m].push_back(site_operator(Generator::F, i, spec.weights(), m));
      }
    }
    std::vector<Rational> ws;
    for (int rep = 0; rep < 5; ++rep) ws.push_back(off_pole(spec, ws));
    for (int rep = 0; rep < 5; ++rep) {
      const Rational& w1 = ws[rep];
      const Rational& w2 = ws[(rep + 1) % 5];
      for (int m = 0; m <= top; ++m) {
        const ExactOperator f1 = lowering_field(spec, w1, m);
        ExactOperator weighted(f1.cols(), f1.cols(), m, m);
        for (std::size_t k = 0; k < spec.n_sites(); ++k) weighted = weighted + hsite[m][k] * Rational(1 / (w1 - spec.z(k)));
        for (std::size_t i = 0; i < spec.n_sites(); ++i) {
          const Rational a = 1 / Rational(w1 - spec.z(i));
          const ExactOperator comm = h[m + 1][i] * f1 - f1 * h[m][i];
          const ExactOperator rhs = (f1 * hsite[m][i]) * a - (fsite[m][i] * weighted) * a;
          ++checks;
          if (!(comm - rhs).is_zero()) o.fail("commutator with F(w) " + tag(spec, m));
        }
        if (m + 2 > spec.total_weight() || m + 1 > top) continue;
        const ExactOperator f1_up = lowering_field(spec, w1, m + 1);
        const ExactOperator f2 = lowering_field(spec, w2, m);
        const ExactOperator f2_up = lowering_field(spec, w2, m + 1);
        for (std::size_t i = 0; i < spec.n_sites(); ++i) {
          const ExactOperator c_m = h[m + 1][i] * f1 - f1 * h[m][i];
          const ExactOperator c_up = h[m + 2][i] * f1_up - f1_up * h[m + 1][i];
          const ExactOperator lhs = c_up * f2 - f2_up * c_m;
          const ExactOperator rhs = ((fsite[m + 1][i] * f2) * Rational(1 / (w1 - spec.z(i))) -
                                     (fsite[m + 1][i] * f1) * Rational(1 / (w2 - spec.z(i)))) *
                                    Rational(2 / (w1 - w2));
          ++checks;
          if (!(lhs - rhs).is_zero()) o.fail("double commutator " + tag(spec, m));
        }
      }
    }
  }
  o.detail = std::to_string(checks) + " exact operator identities at 5 rational points per spec";
  return o;
}

Outcome determinism(const std::vector<ModelSpec>& specs) {
  Outcome o;
  std::size_t compared = 0;
  for (std::size_t k = 0; k < specs.size(); k += 4) {
    const auto& spec = specs[k];
    RunConfig cfg;
    cfg.m = std::min(2, spec.min_weight());
    cfg.m_max = spec.min_weight();
    cfg.eigen.seed = cfg.bethe.seed = 4242;
    for (auto cmd : {cmd_bethe, cmd_eigenbasis, cmd_singular, cmd_verify, cmd_decompose}) {
      ++compared;
      if (cmd(spec, cfg).output != cmd(spec, cfg).output) o.fail("output differs " + spec.to_json());
    }
  }
  o.detail = std::to_string(compared) + " repeated JSON reports byte-identical";
  return o;
}

}  // namespace

int main() {
  const auto specs = suite_specs();
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"exact algebra suite", [&] { return exact_algebra(specs); }},
      {"dimension formulas", [&] { return dimensions(specs); }},
      {"Gordan basis", [&] { return gordan(specs); }},
      {"eigenbasis completeness", [&] { return eigenbasis(specs); }},
      {"Bethe desk-scale reproduction", [] { return bethe_desk_scale(); }},
      {"cross-route consistency", [&] { return cross_route(specs); }},
      {"operator identities at rational points", [&] { return operator_identities(specs); }},
      {"determinism", [&] { return determinism(specs); }},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %zu %s: %s%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str(),
                o.pass ? "" : (" | first failure: " + o.first_failure).c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
