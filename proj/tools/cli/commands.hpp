#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace ionspin::cli {

// Each command writes its files into config.out and returns an exit code.
int cmd_modes(const RunConfig& config);
int cmd_couplings(const RunConfig& config);
int cmd_phase_table(const RunConfig& config);
int cmd_scan2d(const RunConfig& config);
int cmd_gap(const RunConfig& config);
int cmd_check(const RunConfig& config);

struct CheckResult {
  std::string file;
  bool ok = true;
  std::string message;
};

/// Re-reads known output files in `dir` and verifies their invariants.
/// With an empty `only`, every known file present is checked.
std::vector<CheckResult> check_outputs(const std::filesystem::path& dir,
                                       const std::vector<std::string>& only = {});

}  // namespace ionspin::cli
