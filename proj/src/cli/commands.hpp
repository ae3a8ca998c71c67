#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"

namespace qbc::cli {

struct RunConfig {
  std::string command;
  std::string channel_path;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::size_t blocklength = 1;
  std::vector<double> weights;
  std::size_t grid = 0;
  std::size_t restarts = 16;
  std::size_t ensemble_size = 64;
  Format format = Format::csv;
  std::string out_path;
  bool fixtures = false;
  double tol_exact = 1e-9;
  double tol_stat = 3.0;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;      // table or channel document
  std::string diagnostic;  // extra line for stderr, may be empty
};

CommandResult cmd_validate(const RunConfig& config);
CommandResult cmd_fidelity(const RunConfig& config);
CommandResult cmd_region(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_twirl(const RunConfig& config);
CommandResult cmd_teleport(const RunConfig& config);

}  // namespace qbc::cli
