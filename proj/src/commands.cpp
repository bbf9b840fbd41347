#include "gaudin/commands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gaudin/errors.hpp"
#include "gaudin/exact_linalg.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/numeric.hpp"
#include "gaudin/singular.hpp"
#include "gaudin/weight_space.hpp"

namespace gaudin {

using nlohmann::json;

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

namespace {

json complex_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json complex_list(const std::vector<Complex>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(complex_json(x));
  return a;
}

std::string dump(const json& doc) { return doc.dump(); }

int require_m(const RunConfig& cfg, const char* cmd) {
  if (!cfg.m) throw DomainError(std::string(cmd) + " requires --m");
  return *cfg.m;
}

std::string origin_label(const EigenOrigin& o) {
  return o.is_singular() ? std::string("singular") : "lowered:" + std::to_string(o.lowerings);
}

}  // namespace

std::vector<DimensionRow> decompose(const ModelSpec& spec) {
  std::vector<DimensionRow> rows;
  const long n = static_cast<long>(spec.n_sites());
  for (int m = 0; m <= spec.total_weight(); ++m) {
    DimensionRow r;
    r.m = m;
    r.dim = WeightSpace(spec, m).size();
    r.binomial = binomial(n + m - 1, m).get_num().get_ui();
    r.truncated = r.dim < r.binomial;
    rows.push_back(r);
  }
  return rows;
}

CommandResult cmd_decompose(const ModelSpec& spec, const RunConfig& cfg) {
  const auto rows = decompose(spec);
  CommandResult res;
  std::size_t total = 0;
  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "m,dim,binomial,truncated\n";
    for (const auto& r : rows) os << r.m << ',' << r.dim << ',' << r.binomial << ',' << (r.truncated ? 1 : 0) << '\n';
    res.output = os.str();
  } else {
    json doc;
    doc["model"] = json::parse(spec.to_json());
    json levels = json::array();
    for (const auto& r : rows) {
      levels.push_back({{"m", r.m}, {"dim", r.dim}, {"binomial", r.binomial}, {"truncated", r.truncated}});
    }
    doc["levels"] = std::move(levels);
    res.output = dump(doc);
  }
  for (const auto& r : rows) total += r.dim;
  res.summary = "decompose: " + std::to_string(rows.size()) + " weight spaces, total dimension " + std::to_string(total);
  return res;
}

CommandResult cmd_verify(const ModelSpec& spec, const RunConfig& cfg) {
  int lo = 0, hi = spec.total_weight();
  if (cfg.m) lo = hi = *cfg.m;
  std::vector<FamilyReport> reports;
  std::optional<HamiltonianFamily> below;
  if (lo > 0) below = build_family(spec, lo - 1);
  for (int m = lo; m <= hi; ++m) {
    HamiltonianFamily fam = build_family(spec, m);
    if (cfg.inject_fault && !fam.matrices.empty() && fam.matrices[0].cols() > 0) {
      // Negative control: perturb one diagonal entry of H_1.
      auto& h = fam.matrices[0];
      ExactOperator bump(h.rows(), h.cols(), m, m);
      bump.set_column(0, {{0, Rational(1)}});
      h = h + bump;
    }
    reports.push_back(verify_family(spec, fam, below));
    below = std::move(fam);
  }

  CommandResult res;
  std::vector<std::string> failures;
  for (const auto& r : reports) {
    res.verified = res.verified && r.all_pass();
    for (const auto& f : r.failures) failures.push_back("m=" + std::to_string(r.m) + ": " + f);
  }
  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "m,commuting,sum_zero,symmetry_commute\n";
    for (const auto& r : reports) {
      os << r.m << ',' << r.commuting << ',' << r.sum_zero << ',' << r.symmetry_commute << '\n';
    }
    res.output = os.str();
  } else {
    json doc;
    doc["all_pass"] = res.verified;
    json levels = json::array();
    for (const auto& r : reports) {
      levels.push_back({{"m", r.m},
                        {"commuting", r.commuting},
                        {"sum_zero", r.sum_zero},
                        {"symmetry_commute", r.symmetry_commute},
                        {"failures", r.failures}});
    }
    doc["levels"] = std::move(levels);
    res.output = dump(doc);
  }
  res.summary = res.verified ? "verify: all identities hold on " + std::to_string(reports.size()) + " weight spaces"
                             : "verify: FAILED " + failures.front() +
                                   (failures.size() > 1 ? " (+" + std::to_string(failures.size() - 1) + " more)" : "");
  return res;
}

CommandResult cmd_hamiltonian(const ModelSpec& spec, const RunConfig& cfg) {
  const int m = require_m(cfg, "hamiltonian");
  if (!cfg.site) throw DomainError("hamiltonian requires --site");
  const auto h = build_hamiltonian(spec, *cfg.site, m);
  CommandResult res;
  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "row,col,value\n";
    for (const auto& [r, c, v] : h.triplets()) os << r << ',' << c << ',' << to_string(v) << '\n';
    res.output = os.str();
  } else {
    json trip = json::array();
    for (const auto& [r, c, v] : h.triplets()) trip.push_back(json::array({r, c, to_string(v)}));
    res.output = dump(json{{"m", m}, {"i", *cfg.site + 1}, {"triplets", std::move(trip)}});
  }
  res.summary = "hamiltonian: H_" + std::to_string(*cfg.site + 1) + " on V_" + std::to_string(m) + ", " +
                std::to_string(h.nonzeros()) + " nonzeros";
  return res;
}

CommandResult cmd_singular(const ModelSpec& spec, const RunConfig& cfg) {
  const int m = require_m(cfg, "singular");
  const SingularBasis kernel = singular_basis_kernel(spec, m);
  const bool gordan_regime = m <= spec.min_weight();
  const SingularBasis basis = gordan_regime ? singular_basis_gordan(spec, m) : kernel;
  const std::size_t expected = binomial(m + static_cast<long>(spec.n_sites()) - 2, m).get_num().get_ui();

  bool annihilated = true;
  ExactMatrix rows;
  for (const auto& v : basis.vectors) {
    annihilated = annihilated && is_singular(spec.weights(), m, v.coords);
    rows.push_back(v.coords);
  }
  const std::size_t rank = exact_rank(rows);
  bool span_matches = true;
  if (gordan_regime) {
    for (const auto& v : kernel.vectors) rows.push_back(v.coords);
    span_matches = exact_rank(rows) == rank && kernel.size() == rank;
  }
  CommandResult res;
  res.verified = annihilated && rank == basis.size() && span_matches && (!gordan_regime || rank == expected);

  const char* method = gordan_regime ? "gordan" : "kernel";
  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "vector,composition,index,value\n";
    for (std::size_t j = 0; j < basis.size(); ++j) {
      std::string comp;
      for (std::size_t t = 0; t < basis.vectors[j].composition.size(); ++t) {
        comp += (t ? "-" : "") + std::to_string(basis.vectors[j].composition[t]);
      }
      for (std::size_t s = 0; s < basis.vectors[j].coords.size(); ++s) {
        os << j << ',' << comp << ',' << s << ',' << to_string(basis.vectors[j].coords[s]) << '\n';
      }
    }
    res.output = os.str();
  } else {
    json vectors = json::array();
    for (const auto& v : basis.vectors) {
      json coords = json::array();
      for (const auto& x : v.coords) coords.push_back(to_string(x));
      vectors.push_back({{"m", m}, {"composition", v.composition}, {"vector", std::move(coords)}});
    }
    json doc{{"m", m},
             {"method", method},
             {"dimension", basis.size()},
             {"expected", expected},
             {"kernel_dimension", kernel.size()},
             {"checks", {{"annihilated", annihilated}, {"rank", rank}, {"span_matches_kernel", span_matches}}},
             {"vectors", std::move(vectors)}};
    res.output = dump(doc);
  }
  res.summary = std::string("singular: ") + std::to_string(basis.size()) + " vectors in Sing V_" + std::to_string(m) +
                " (" + method + ", expected " + std::to_string(expected) + ")" + (res.verified ? "" : " FAILED");
  return res;
}

CommandResult cmd_eigenbasis(const ModelSpec& spec, const RunConfig& cfg) {
  const int m_max = cfg.m_max.value_or(spec.min_weight());
  const EigenBasis basis = build_eigenbasis(spec, m_max, cfg.eigen);
  CommandResult res;

  json levels = json::array();
  double worst_residual = 0.0;
  double worst_inheritance = 0.0;
  const BetheModel numeric_model = BetheModel::from_spec(spec);
  for (const auto& level : basis.levels) {
    std::vector<ComplexOperator> hs;
    for (std::size_t i = 0; i < spec.n_sites(); ++i) hs.push_back(to_complex(build_hamiltonian(spec, i, level.m)));
    json vectors = json::array();
    for (const auto& v : level.vectors) {
      worst_residual = std::max(worst_residual, v.residual);
      if (!v.origin.is_singular()) {
        const auto recomputed = rayleigh_quotients(hs, v.coords);
        for (std::size_t i = 0; i < recomputed.size(); ++i) {
          worst_inheritance = std::max(worst_inheritance, std::abs(recomputed[i] - v.eigenvalues[i]));
        }
      }
      json coords = json::array();
      for (Eigen::Index s = 0; s < v.coords.size(); ++s) coords.push_back(complex_json(v.coords(s)));
      vectors.push_back({{"coords", std::move(coords)},
                         {"eigenvalues", complex_list(v.eigenvalues)},
                         {"origin", origin_label(v.origin)},
                         {"residual", v.residual}});
    }
    json lvl{{"m", level.m}, {"min_singular_value", level.min_singular_value}, {"vectors", std::move(vectors)}};
    if (level.m > 0) {
      const auto ns = verify_nonsingularity(spec, basis, level.m, cfg.eigen.tol);
      lvl["nonsingular"] = ns.all_pass();
      res.verified = res.verified && ns.all_pass();
    }
    levels.push_back(std::move(lvl));
  }
  res.verified = res.verified && worst_residual <= cfg.eigen.tol && worst_inheritance <= cfg.eigen.tol;

  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "m,vector,origin,residual,coord,re,im\n";
    for (const auto& level : basis.levels) {
      for (std::size_t j = 0; j < level.vectors.size(); ++j) {
        const auto& v = level.vectors[j];
        for (Eigen::Index s = 0; s < v.coords.size(); ++s) {
          os << level.m << ',' << j << ',' << origin_label(v.origin) << ',' << format_double(v.residual) << ',' << s
             << ',' << format_double(v.coords(s).real()) << ',' << format_double(v.coords(s).imag()) << '\n';
        }
      }
    }
    res.output = os.str();
  } else {
    res.output = dump(json{{"m_max", m_max}, {"levels", std::move(levels)}});
  }
  std::size_t count = 0;
  for (const auto& level : basis.levels) count += level.vectors.size();
  res.summary = "eigenbasis: " + std::to_string(count) + " common eigenvectors for m=0.." + std::to_string(m_max) +
                ", worst residual " + format_double(worst_residual) + (res.verified ? "" : " FAILED");
  return res;
}

CommandResult cmd_bethe(const ModelSpec& spec, const RunConfig& cfg) {
  const int m = require_m(cfg, "bethe");
  const BetheModel model = BetheModel::from_spec(spec);
  const BetheReport report = solve_bethe(model, m, cfg.bethe);
  CommandResult res;
  for (const auto& s : report.solutions) {
    res.verified = res.verified && s.singular_residual <= cfg.bethe.tol && s.vector_residual <= cfg.bethe.tol;
  }
  if (cfg.format == Format::Csv) {
    std::ostringstream os;
    os << "solution,root,re,im,residual_eq,singular_residual,vector_residual,multiplicity_flag\n";
    for (std::size_t j = 0; j < report.solutions.size(); ++j) {
      const auto& s = report.solutions[j];
      for (std::size_t r = 0; r < s.roots.size(); ++r) {
        os << j << ',' << r << ',' << format_double(s.roots[r].real()) << ',' << format_double(s.roots[r].imag()) << ','
           << format_double(s.residual_eq) << ',' << format_double(s.singular_residual) << ','
           << format_double(s.vector_residual) << ',' << (s.multiplicity_flag ? 1 : 0) << '\n';
      }
    }
    res.output = os.str();
  } else {
    json sols = json::array();
    for (const auto& s : report.solutions) {
      sols.push_back({{"roots", complex_list(s.roots)},
                      {"eigenvalues", complex_list(s.eigenvalues)},
                      {"residual_eq", s.residual_eq},
                      {"singular_residual", s.singular_residual},
                      {"vector_residual", s.vector_residual},
                      {"multiplicity_flag", s.multiplicity_flag}});
    }
    res.output = dump(json{{"m", m},
                           {"solutions", std::move(sols)},
                           {"expected_count", report.expected_count},
                           {"found", report.found()}});
  }
  res.summary = "bethe: m=" + std::to_string(m) + " found=" + std::to_string(report.found()) +
                " expected=" + std::to_string(report.expected_count) + (res.verified ? "" : " FAILED");
  return res;
}

}  // namespace gaudin
