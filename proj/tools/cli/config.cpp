#include "config.hpp"

#include <fmt/format.h>

#include "ionspin/error.hpp"
#include "ionspin/phase.hpp"

namespace ionspin::cli {

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError(fmt::format("range '{}' is not lo:hi", text));
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    Range r{std::stod(lo, &used_lo), std::stod(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    if (!(r.first <= r.second)) throw ConfigError(fmt::format("range '{}' is reversed", text));
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError(fmt::format("range '{}' is not lo:hi", text));
  }
}

RunConfig resolve(RunConfig c) {
  if (c.n_ions < 2) throw ConfigError(fmt::format("--n must be >= 2, got {}", c.n_ions));
  if (!(c.beta > 0.0)) throw ConfigError(fmt::format("--beta must be positive, got {}", c.beta));
  if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (!(c.b >= 0.0)) throw ConfigError("--b must be non-negative");
  if (c.samples < 1) throw ConfigError("--samples must be positive");
  if (c.format != "csv" && c.format != "json" && c.format != "both") {
    throw ConfigError(fmt::format("--format must be csv, json or both, got '{}'", c.format));
  }
  if (c.n_list.empty()) throw ConfigError("--n-list is empty");

  if (c.command == "couplings" && !c.mu_tilde) c.mu_tilde = c.n_ions - 1.5;
  if (c.command == "scan2d") {
    if (!c.mu_range) c.mu_range = fm_kink_bracket(c.n_ions);
    if (!c.b_range) c.b_range = Range{0.0, 0.4};
    if (!c.b_samples) c.b_samples = 33;
  }
  if (c.command == "gap") {
    if (!c.b_range) c.b_range = Range{0.01, 0.1};
    if (!c.b_samples) c.b_samples = 8;
    if (!(c.b_range->first > 0.0)) throw ConfigError("gap --b-range must start above 0");
    if (*c.b_samples < 5) throw ConfigError("gap needs at least 5 --b-samples");
  }
  if (c.b_samples && *c.b_samples < 1) throw ConfigError("--b-samples must be positive");
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  if (c.command == "gap") {
    j["n_list"] = c.n_list;
  } else {
    j["n_ions"] = c.n_ions;
  }
  j["beta"] = c.beta;
  if (c.mu_tilde) j["mu_tilde"] = *c.mu_tilde;
  if (c.mu_range) j["mu_range"] = {c.mu_range->first, c.mu_range->second};
  if (c.command == "scan2d" || c.command == "gap") {
    j["b_range"] = {c.b_range->first, c.b_range->second};
    j["b_samples"] = *c.b_samples;
    j["b_unit"] = c.command == "gap" ? "N*jbar" : "jbar";
  }
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  j["refine_tol"] = c.refine_tol;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

bool wants_csv(const RunConfig& c) { return c.format != "json"; }
bool wants_json(const RunConfig& c) { return c.format != "csv"; }

}  // namespace ionspin::cli
