#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nodal/zerofinder.hpp"

namespace nodal::cli {

inline constexpr std::uint64_t kDefaultSeed = 1729;

enum class Format { Json, Csv };

enum ExitCode : int {
  kOk = 0,
  kInvalidConfig = 2,
  kInvariantViolation = 3,
  kDegenerate = 4,
};

struct RunConfig {
  // invariants | count | average | conjecture | zonal | embedding | crofton-length
  std::string command;
  int sphere_dim = 2;
  // One entry per eigenfunction; a single entry is repeated n times.
  std::vector<int> degrees{3};
  int trials = 400;
  std::uint64_t seed = kDefaultSeed;
  SolverConfig solver;
  int quadrature_depth = 4;
  // Zonal tilt; negative selects zonal_alpha_max(m) / 2.
  double alpha = -1.0;
  // crofton-length target: "zonal" (reference length known) or "random".
  std::string function = "zonal";
  // Sample points for the pointwise identity sweep.
  int points = 100;
  Format format = Format::Json;
  std::string out;
};

struct RunResult {
  int exit_code = kOk;
  // The serialized report; empty when the config was rejected.
  std::string report;
  // Human-readable failure description for stderr.
  std::string message;
};

// Validates the config, runs the subcommand and serializes one report.
RunResult run(const RunConfig& config);

// Full command-line entry point: parses flags, runs, writes the report.
int main(int argc, char** argv);

}  // namespace nodal::cli
