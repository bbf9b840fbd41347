#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gaudin/bethe.hpp"
#include "gaudin/eigenbasis.hpp"
#include "gaudin/model.hpp"

// Report-producing drivers behind the command-line subcommands. Each one
// returns the serialized report plus a one-line summary; numerical and
// domain failures propagate as exceptions.

namespace gaudin {

enum class Format { Json, Csv };

struct RunConfig {
  std::optional<int> m;
  std::optional<int> m_max;
  std::optional<std::size_t> site;  // 0-based
  EigenOptions eigen;
  BetheOptions bethe;
  Format format = Format::Json;
  bool inject_fault = false;  // perturbs H_1 before verification (negative control)
};

struct CommandResult {
  std::string output;
  std::string summary;
  bool verified = true;  // every verification requested by the command passed
};

struct DimensionRow {
  int m = 0;
  std::size_t dim = 0;
  std::size_t binomial = 0;  // C(N+m-1, m)
  bool truncated = false;    // dim < C(N+m-1, m)
};

std::vector<DimensionRow> decompose(const ModelSpec& spec);

CommandResult cmd_decompose(const ModelSpec& spec, const RunConfig& cfg);
CommandResult cmd_verify(const ModelSpec& spec, const RunConfig& cfg);
CommandResult cmd_hamiltonian(const ModelSpec& spec, const RunConfig& cfg);
CommandResult cmd_singular(const ModelSpec& spec, const RunConfig& cfg);
CommandResult cmd_eigenbasis(const ModelSpec& spec, const RunConfig& cfg);
CommandResult cmd_bethe(const ModelSpec& spec, const RunConfig& cfg);

/// Shortest round-trip decimal text of a double.
std::string format_double(double x);

}  // namespace gaudin
