#include "app.hpp"

#include <fmt/format.h>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "ionspin/error.hpp"

namespace ionspin::cli {
namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError(fmt::format("bad entry '{}' in list '{}'", item, text));
    }
  }
  return out;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ZigzagInstability*>(&e)) return "ZigzagInstability";
  if (dynamic_cast<const SolverError*>(&e)) return "SolverError";
  if (dynamic_cast<const ResonanceError*>(&e)) return "ResonanceError";
  if (dynamic_cast<const OutOfRange*>(&e)) return "OutOfRange";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
  return "error";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Trapped-ion Ising chain: phonon modes, couplings and ground-state phases"};
  app.set_config("--config", "", "key=value file (command-line flags take precedence)");
  app.require_subcommand(1);

  RunConfig c;
  double mu_tilde = 0.0;
  std::string mu_range, b_range, n_list;
  int b_samples = 0;

  app.add_option("--n", c.n_ions, "number of ions")->capture_default_str();
  app.add_option("--beta", c.beta, "trap aspect ratio wx/wz")->capture_default_str();
  auto* o_mu = app.add_option("--mu-tilde", mu_tilde, "rescaled detuning (couplings; default N-1.5)");
  auto* o_mu_range = app.add_option("--mu-range", mu_range, "lo:hi detuning range (scan2d)");
  app.add_option("--b", c.b, "transverse field in units of jbar")->capture_default_str();
  auto* o_b_range = app.add_option("--b-range", b_range,
                                   "lo:hi field range (scan2d: jbar, default 0:0.4; "
                                   "gap: N*jbar, default 0.01:0.1)");
  app.add_option("--samples", c.samples, "samples per mode interval / detuning grid points")
      ->capture_default_str();
  auto* o_b_samples = app.add_option("--b-samples", b_samples,
                                     "field grid points (scan2d default 33, gap default 8)");
  app.add_option("--tol", c.tol, "eigensolver residual tolerance")->capture_default_str();
  app.add_option("--refine-tol", c.refine_tol, "phase-boundary bisection tolerance")
      ->capture_default_str();
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--format", c.format, "csv, json or both")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads for scans (<= 0: all cores)")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Lanczos start-vector seed")->capture_default_str();
  auto* o_n_list = app.add_option("--n-list", n_list, "comma-separated chain lengths (gap, default 3,5,7,9)");
  app.add_flag("--check", c.check, "re-verify written files");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"modes", "equilibrium positions and transverse modes"},
      {"couplings", "Ising couplings and bond graph at one detuning"},
      {"phase-table", "B = 0 ground-state orders over all mode intervals"},
      {"scan2d", "order parameter and polarization over (mu, B)"},
      {"gap", "ferromagnet-kink gap scaling and alpha fit"},
      {"check", "re-read output files and verify their invariants"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (o_mu->count()) c.mu_tilde = mu_tilde;
    if (o_mu_range->count()) c.mu_range = parse_range(mu_range);
    if (o_b_range->count()) c.b_range = parse_range(b_range);
    if (o_b_samples->count()) c.b_samples = b_samples;
    if (o_n_list->count()) c.n_list = parse_int_list(n_list);
    c = resolve(c);

    if (c.command == "modes") return cmd_modes(c);
    if (c.command == "couplings") return cmd_couplings(c);
    if (c.command == "phase-table") return cmd_phase_table(c);
    if (c.command == "scan2d") return cmd_scan2d(c);
    if (c.command == "gap") return cmd_gap(c);
    return cmd_check(c);
  } catch (const ConfigError& e) {
    std::cerr << error_kind(e) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_kind(e) << ": " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ionspin::cli
