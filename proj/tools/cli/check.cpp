#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <numeric>

#include "commands.hpp"
#include "ionspin/error.hpp"
#include "output.hpp"

namespace ionspin::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

void require(bool cond, const std::string& what) {
  if (!cond) throw NumericalError(what);
}

json meta_json(const CsvTable& t, const std::string& key) {
  for (const auto& m : t.meta) {
    if (m.rfind(key + ": ", 0) == 0) return json::parse(m.substr(key.size() + 2));
  }
  throw NumericalError(fmt::format("missing '{}' metadata line", key));
}

std::string check_positions(const fs::path& p) {
  const auto t = read_csv(p);
  const std::size_t n = t.rows.size();
  require(n >= 2, "fewer than two ions");
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) require(t.value(i, "u_n") > t.value(i - 1, "u_n"), "positions not ascending");
    asym = std::max(asym, std::abs(t.value(i, "u_n") + t.value(n - 1 - i, "u_n")));
  }
  require(asym <= 1e-9, fmt::format("positions asymmetric by {:.3e}", asym));
  return fmt::format("{} ions, ascending, symmetric to {:.1e}", n, asym);
}

std::string check_mode_block(const std::vector<double>& omega,
                             const std::vector<std::vector<double>>& b, double beta) {
  const std::size_t n = omega.size();
  require(std::is_sorted(omega.begin(), omega.end()), "frequencies not ascending");
  require(std::abs(omega.back() - beta) <= 1e-8, "top frequency differs from beta");
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += b[k][i] * b[q][i];
      dev = std::max(dev, std::abs(d - (k == q ? 1.0 : 0.0)));
    }
  }
  require(dev <= 1e-9, fmt::format("mode vectors not orthonormal ({:.3e})", dev));
  return fmt::format("{} modes, orthonormal to {:.1e}", n, dev);
}

std::string check_modes_csv(const fs::path& p) {
  const auto t = read_csv(p);
  const double beta = meta_json(t, "config").at("beta");
  const std::size_t n = t.rows.size();
  std::vector<double> omega;
  std::vector<std::vector<double>> b;
  for (std::size_t k = 0; k < n; ++k) {
    omega.push_back(t.value(k, "omega_k"));
    b.emplace_back();
    for (std::size_t i = 1; i <= n; ++i) b.back().push_back(t.value(k, fmt::format("b_{}", i)));
  }
  return check_mode_block(omega, b, beta);
}

std::string check_modes_json(const fs::path& p) {
  const auto j = read_json(p);
  std::vector<double> omega;
  std::vector<std::vector<double>> b;
  for (const auto& m : j.at("modes")) {
    omega.push_back(m.at("omega"));
    b.push_back(m.at("b").get<std::vector<double>>());
  }
  const auto pos = j.at("positions").get<std::vector<double>>();
  require(std::is_sorted(pos.begin(), pos.end()), "positions not ascending");
  return check_mode_block(omega, b, j.at("config").at("beta"));
}

std::string check_couplings(const fs::path& p) {
  const auto t = read_csv(p);
  const auto info = meta_json(t, "couplings");
  const int n = info.at("N");
  require(t.rows.size() == static_cast<std::size_t>(n * (n - 1) / 2), "wrong number of pairs");
  double sum = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    require(t.value(r, "m") < t.value(r, "n"), "pair not ordered m < n");
    const double v = t.value(r, "j_mn");
    sum += 2.0 * v * v;
  }
  const double jbar = std::sqrt(sum / (n * (n - 1.0)));
  const double ref = info.at("jbar");
  require(std::abs(jbar - ref) <= 1e-12 * ref, "jbar does not match the couplings");
  return fmt::format("{} pairs, jbar consistent", t.rows.size());
}

std::string check_bond_graph(const fs::path& p) {
  const auto j = read_json(p);
  const int n = j.at("N");
  const auto& edges = j.at("edges");
  require(edges.size() == static_cast<std::size_t>(n * (n - 1) / 2), "wrong number of edges");
  require(j.at("nodes").size() == static_cast<std::size_t>(n), "wrong number of nodes");
  double prev = INFINITY;
  for (const auto& e : edges) {
    const double v = e.at("value"), w = e.at("weight");
    require(w == std::abs(v), "weight is not |value|");
    require(w <= prev, "edges not sorted by weight");
    require((e.at("kind") == "ferromagnetic") == (v < 0), "bond kind does not match sign");
    prev = w;
  }
  return fmt::format("{} edges sorted, kinds consistent", edges.size());
}

std::string check_phase_json(const fs::path& p) {
  const auto j = read_json(p);
  int transitions = 0;
  for (const auto& iv : j.at("intervals")) {
    const double k = iv.at("interval")[0];
    const auto& segs = iv.at("segments");
    require(!segs.empty(), "interval without segments");
    require(segs.front().at("mu_lo") == k, "tiling does not start at the mode");
    require(segs.back().at("mu_hi") == k + 1, "tiling does not end at the mode");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      require(segs[i].at("mu_lo") < segs[i].at("mu_hi"), "empty segment");
      const int d = segs[i].at("degeneracy");
      require(d == 2 || d == 4, "degeneracy not 2 or 4");
      require(segs[i].at("reflection_symmetric") == (d == 2), "symmetry flag inconsistent");
      if (i > 0) {
        require(segs[i].at("mu_lo") == segs[i - 1].at("mu_hi"), "segments overlap or gap");
        require(segs[i].at("order") != segs[i - 1].at("order"), "adjacent segments share an order");
      }
    }
    for (const auto& t : iv.at("transitions")) {
      const double lo = t.at("bracket")[0], hi = t.at("bracket")[1];
      require(hi - lo <= 1e-6, "transition bracket wider than 1e-6");
    }
    require(iv.at("transitions").size() + 1 == segs.size(), "transition count mismatch");
    transitions += static_cast<int>(iv.at("transitions").size());
  }
  require(transitions == j.at("transition_count"), "transition_count mismatch");
  return fmt::format("tiling valid, {} transitions", transitions);
}

std::string check_phase_csv(const fs::path& p) {
  const auto t = read_csv(p);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double k = t.value(r, "interval");
    const bool first = r == 0 || t.value(r - 1, "interval") != k;
    const bool last = r + 1 == t.rows.size() || t.value(r + 1, "interval") != k;
    if (first) require(t.value(r, "mu_lo") == k, "tiling does not start at the mode");
    if (!first) require(t.value(r, "mu_lo") == t.value(r - 1, "mu_hi"), "segments overlap or gap");
    if (last) require(t.value(r, "mu_hi") == k + 1, "tiling does not end at the mode");
  }
  return fmt::format("{} segments tile their intervals", t.rows.size());
}

void check_scan_row(double op, double pol, double e0, double e1) {
  if (std::isnan(op)) return;
  require(op >= -1.0 - 1e-12 && op <= 1.0 + 1e-12, "order parameter outside [-1, 1]");
  require(pol >= -1.0 - 1e-12 && pol <= 1.0 + 1e-12, "polarization outside [-1, 1]");
  require(e0 <= e1 + 1e-12, "E0 above E1");
}

std::string check_scan_csv(const fs::path& p) {
  const auto t = read_csv(p);
  const auto cfg = meta_json(t, "config");
  const std::size_t expected = cfg.at("samples").get<std::size_t>() * cfg.at("b_samples").get<std::size_t>();
  require(t.rows.size() == expected, "grid size does not match config");
  std::size_t missing = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double op = t.value(r, "order_parameter");
    missing += std::isnan(op) ? 1 : 0;
    check_scan_row(op, t.value(r, "polarization"), t.value(r, "E0"), t.value(r, "E1"));
  }
  return fmt::format("{} points, {} missing", t.rows.size(), missing);
}

std::string check_scan_json(const fs::path& p) {
  const auto j = read_json(p);
  const std::size_t expected = j.at("mu_points").get<std::size_t>() * j.at("b_points").get<std::size_t>();
  require(j.at("rows").size() == expected, "grid size does not match");
  for (const auto& r : j.at("rows")) {
    if (r[2].is_null()) continue;
    check_scan_row(r[2], r[3], r[4], r[5]);
  }
  return fmt::format("{} points", expected);
}

std::string check_gap_csv(const fs::path& p) {
  const auto t = read_csv(p);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (std::isnan(t.value(r, "delta_E"))) continue;
    require(t.value(r, "delta_E") > 0.0, "non-positive gap");
    require(t.value(r, "full_gap") <= t.value(r, "delta_E") * (1 + 1e-9), "full gap above sector gap");
  }
  return fmt::format("{} gap samples", t.rows.size());
}

std::string check_alpha_json(const fs::path& p) {
  const auto j = read_json(p);
  std::vector<double> ns, alphas;
  for (const auto& f : j.at("fits")) {
    if (f.at("alpha").is_null()) continue;
    require(f.at("alpha").get<double>() > 0.0, "non-positive alpha");
    ns.push_back(f.at("N"));
    alphas.push_back(f.at("alpha"));
  }
  if (!j.at("linear_fit").is_null()) {
    const double mx = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
    const double my = std::accumulate(alphas.begin(), alphas.end(), 0.0) / alphas.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      sxx += (ns[i] - mx) * (ns[i] - mx);
      sxy += (ns[i] - mx) * (alphas[i] - my);
    }
    const double slope = j.at("linear_fit").at("slope");
    require(std::abs(sxy / sxx - slope) <= 1e-12, "slope does not match the alphas");
  }
  return fmt::format("{} fits", alphas.size());
}

const std::map<std::string, std::function<std::string(const fs::path&)>>& checkers() {
  static const std::map<std::string, std::function<std::string(const fs::path&)>> table{
      {"positions.csv", check_positions},    {"modes.csv", check_modes_csv},
      {"modes.json", check_modes_json},      {"couplings.csv", check_couplings},
      {"bond_graph.json", check_bond_graph}, {"phase_table.json", check_phase_json},
      {"phase_table.csv", check_phase_csv},  {"scan2d.csv", check_scan_csv},
      {"scan2d.json", check_scan_json},      {"gap_scaling.csv", check_gap_csv},
      {"alpha_fit.json", check_alpha_json},
  };
  return table;
}

}  // namespace

std::vector<CheckResult> check_outputs(const fs::path& dir, const std::vector<std::string>& only) {
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checkers()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const fs::path p = dir / name;
    if (!fs::exists(p)) continue;
    CheckResult r;
    r.file = name;
    try {
      r.message = fn(p);
    } catch (const std::exception& e) {
      r.ok = false;
      r.message = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ionspin::cli
