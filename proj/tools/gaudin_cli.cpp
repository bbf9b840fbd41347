// Command-line front end. Talks to the library only through gaudin_c.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "gaudin/gaudin_c.h"

namespace {

using CommandFn = gaudin_status (*)(const gaudin_model*, const gaudin_options*, char**, char**);

struct CStr {
  char* p = nullptr;
  ~CStr() { gaudin_string_free(p); }
};

struct Args {
  std::string spec;
  int m = -1;
  int m_max = -1;
  int site = -1;
  double tol = 0;
  double tol_rank = 0;
  double tol_root = 0;
  double dedup_tol = 0;
  uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool inject_fault = false;
};

int execute(CommandFn fn, const Args& a, CLI::App* sub) {
  gaudin_model* raw = nullptr;
  if (gaudin_model_from_file(a.spec.c_str(), &raw) != GAUDIN_OK) {
    std::cerr << "error: " << gaudin_last_error() << '\n';
    return GAUDIN_INPUT_ERROR;
  }
  std::unique_ptr<gaudin_model, decltype(&gaudin_model_free)> model(raw, gaudin_model_free);

  gaudin_options opts;
  gaudin_options_init(&opts);
  opts.m = a.m;
  opts.m_max = a.m_max;
  opts.site = a.site;
  opts.tol = a.tol;
  opts.tol_rank = a.tol_rank;
  opts.tol_root = a.tol_root;
  opts.dedup_tol = a.dedup_tol;
  opts.has_seed = sub->count("--seed") > 0;
  opts.seed = a.seed;
  opts.format = a.format == "csv" ? GAUDIN_FORMAT_CSV : GAUDIN_FORMAT_JSON;
  opts.inject_fault = a.inject_fault;

  CStr report, summary;
  const gaudin_status st = fn(model.get(), &opts, &report.p, &summary.p);
  if (st != GAUDIN_OK && st != GAUDIN_VERIFICATION_FAILED) {
    std::cerr << "error: " << gaudin_last_error() << '\n';
    return st;
  }
  if (a.out.empty()) {
    std::cout << report.p << '\n';
  } else {
    std::ofstream f(a.out);
    if (!f) {
      std::cerr << "error: cannot write " << a.out << '\n';
      return GAUDIN_INPUT_ERROR;
    }
    f << report.p << '\n';
    std::cout << summary.p << '\n';
  }
  if (st == GAUDIN_VERIFICATION_FAILED) std::cerr << "verification failed: " << summary.p << '\n';
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaudin model toolkit: weight spaces, Hamiltonians, singular vectors, eigenbases, Bethe roots"};
  app.require_subcommand(1);
  Args a;

  struct Sub {
    const char* name;
    const char* help;
    CommandFn fn;
  };
  const Sub subs[] = {
      {"decompose", "dimensions of the weight spaces V_m", gaudin_decompose},
      {"verify", "exact commutativity and symmetry checks of the Gaudin Hamiltonians", gaudin_verify},
      {"hamiltonian", "sparse exact matrix of H_i on V_m", gaudin_hamiltonian},
      {"singular", "exact basis of singular vectors in V_m", gaudin_singular},
      {"eigenbasis", "common eigenbasis of the Hamiltonians for m = 0..m_max", gaudin_eigenbasis},
      {"bethe", "solutions of the Bethe equations for m roots", gaudin_bethe},
  };

  CommandFn chosen = nullptr;
  CLI::App* chosen_app = nullptr;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--spec", a.spec, "model JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--m", a.m, "spin deviation")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", a.out, "write the report here and print a summary line");
    sub->add_option("--format", a.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", a.seed, "random seed");
    sub->add_option("--tol", a.tol, "residual tolerance")->check(CLI::PositiveNumber);
    const std::string name = s.name;
    if (name == "hamiltonian") sub->add_option("--site", a.site, "site index, 1-based")->required();
    if (name == "eigenbasis") {
      sub->add_option("--m-max", a.m_max, "largest m")->check(CLI::NonNegativeNumber);
      sub->add_option("--tol-rank", a.tol_rank, "smallest admissible singular value of a level basis")
          ->check(CLI::PositiveNumber);
    }
    if (name == "bethe") {
      sub->add_option("--tol-root", a.tol_root, "Bethe equation residual bound")->check(CLI::PositiveNumber);
      sub->add_option("--dedup-tol", a.dedup_tol, "distance below which solutions coincide")
          ->check(CLI::PositiveNumber);
    }
    if (name == "verify") sub->add_flag("--inject-fault", a.inject_fault, "perturb H_1 (negative control)")->group("");
    sub->callback([&, fn = s.fn, sub] {
      chosen = fn;
      chosen_app = sub;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : GAUDIN_INPUT_ERROR;
  }
  if ((chosen == gaudin_singular || chosen == gaudin_bethe || chosen == gaudin_hamiltonian) && a.m < 0) {
    std::cerr << "error: --m is required for " << chosen_app->get_name() << '\n';
    return GAUDIN_INPUT_ERROR;
  }
  return execute(chosen, a, chosen_app);
}
