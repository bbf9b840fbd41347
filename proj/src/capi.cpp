#include "gaudin/gaudin_c.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "gaudin/commands.hpp"
#include "gaudin/errors.hpp"
#include "gaudin/model.hpp"

struct gaudin_model {
  gaudin::ModelSpec spec;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
gaudin_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const gaudin::ParseError& e) {
    last_error = std::string("parse error: ") + e.what();
    return GAUDIN_INPUT_ERROR;
  } catch (const gaudin::DomainError& e) {
    last_error = std::string("domain error: ") + e.what();
    return GAUDIN_INPUT_ERROR;
  } catch (const gaudin::NumericalError& e) {
    last_error = std::string("numerical failure: ") + e.what();
    return GAUDIN_NUMERICAL_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GAUDIN_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GAUDIN_INTERNAL_ERROR;
  }
}

gaudin::RunConfig to_config(const gaudin_model* model, const gaudin_options* opts) {
  gaudin::RunConfig cfg;
  if (!opts) return cfg;
  if (opts->m >= 0) cfg.m = opts->m;
  if (opts->m_max >= 0) cfg.m_max = opts->m_max;
  if (opts->site >= 0) {
    if (opts->site < 1 || static_cast<std::size_t>(opts->site) > model->spec.n_sites()) {
      throw gaudin::DomainError("site must be between 1 and " + std::to_string(model->spec.n_sites()));
    }
    cfg.site = static_cast<std::size_t>(opts->site - 1);
  }
  if (opts->tol > 0) cfg.eigen.tol = cfg.bethe.tol = opts->tol;
  if (opts->tol_rank > 0) cfg.eigen.tol_rank = opts->tol_rank;
  if (opts->tol_root > 0) cfg.bethe.tol_root = opts->tol_root;
  if (opts->dedup_tol > 0) cfg.bethe.dedup_tol = opts->dedup_tol;
  if (opts->has_seed) cfg.eigen.seed = cfg.bethe.seed = opts->seed;
  cfg.format = opts->format == GAUDIN_FORMAT_CSV ? gaudin::Format::Csv : gaudin::Format::Json;
  cfg.inject_fault = opts->inject_fault != 0;
  return cfg;
}

using Command = gaudin::CommandResult (*)(const gaudin::ModelSpec&, const gaudin::RunConfig&);

gaudin_status run(Command cmd, const gaudin_model* model, const gaudin_options* opts, char** report,
                  char** summary) {
  if (report) *report = nullptr;
  if (summary) *summary = nullptr;
  return guarded([&] {
    if (!model || !report) throw gaudin::DomainError("null model or report pointer");
    const auto result = cmd(model->spec, to_config(model, opts));
    *report = duplicate(result.output);
    if (summary) *summary = duplicate(result.summary);
    if (!result.verified) last_error = result.summary;
    return result.verified ? GAUDIN_OK : GAUDIN_VERIFICATION_FAILED;
  });
}

}  // namespace

extern "C" {

void gaudin_options_init(gaudin_options* opts) {
  if (!opts) return;
  *opts = gaudin_options{};
  opts->m = -1;
  opts->m_max = -1;
  opts->site = -1;
  opts->format = GAUDIN_FORMAT_JSON;
}

gaudin_status gaudin_model_from_json(const char* json, gaudin_model** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    if (!json || !out) throw gaudin::DomainError("null argument");
    *out = new gaudin_model{gaudin::ModelSpec::from_json(json)};
    return GAUDIN_OK;
  });
}

gaudin_status gaudin_model_from_file(const char* path, gaudin_model** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    if (!path || !out) throw gaudin::DomainError("null argument");
    std::ifstream in(path);
    if (!in) throw gaudin::ParseError(std::string("cannot open ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    *out = new gaudin_model{gaudin::ModelSpec::from_json(text.str())};
    return GAUDIN_OK;
  });
}

void gaudin_model_free(gaudin_model* model) { delete model; }

size_t gaudin_model_sites(const gaudin_model* model) { return model ? model->spec.n_sites() : 0; }

gaudin_status gaudin_decompose(const gaudin_model* model, const gaudin_options* opts, char** report, char** summary) {
  return run(gaudin::cmd_decompose, model, opts, report, summary);
}

gaudin_status gaudin_verify(const gaudin_model* model, const gaudin_options* opts, char** report, char** summary) {
  return run(gaudin::cmd_verify, model, opts, report, summary);
}

gaudin_status gaudin_hamiltonian(const gaudin_model* model, const gaudin_options* opts, char** report,
                                 char** summary) {
  return run(gaudin::cmd_hamiltonian, model, opts, report, summary);
}

gaudin_status gaudin_singular(const gaudin_model* model, const gaudin_options* opts, char** report, char** summary) {
  return run(gaudin::cmd_singular, model, opts, report, summary);
}

gaudin_status gaudin_eigenbasis(const gaudin_model* model, const gaudin_options* opts, char** report,
                                char** summary) {
  return run(gaudin::cmd_eigenbasis, model, opts, report, summary);
}

gaudin_status gaudin_bethe(const gaudin_model* model, const gaudin_options* opts, char** report, char** summary) {
  return run(gaudin::cmd_bethe, model, opts, report, summary);
}

void gaudin_string_free(char* s) { std::free(s); }

const char* gaudin_last_error(void) { return last_error.c_str(); }

}  // extern "C"
