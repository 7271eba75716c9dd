#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ionspin::cli {

using Range = std::pair<double, double>;

/// Options as given (flags, config file or defaults). Command-dependent
/// values stay empty until resolve().
struct RunConfig {
  std::string command;
  int n_ions = 7;
  double beta = 10.0;
  std::optional<double> mu_tilde;
  std::optional<Range> mu_range;
  double b = 0.0;  // jbar units
  std::optional<Range> b_range;
  int samples = 64;
  std::optional<int> b_samples;
  double tol = 1e-10;
  double refine_tol = 1e-9;
  std::string out = ".";
  std::string format = "both";
  int threads = 1;
  std::uint64_t seed = 0x5EED;
  std::vector<int> n_list{3, 5, 7, 9};
  bool check = false;
};

/// Parses "lo:hi".
Range parse_range(const std::string& text);

/// Fills command-dependent defaults and validates; throws ConfigError.
RunConfig resolve(RunConfig config);

/// Fully resolved config for file headers.
nlohmann::ordered_json to_json(const RunConfig& config);

bool wants_csv(const RunConfig& config);
bool wants_json(const RunConfig& config);

}  // namespace ionspin::cli
