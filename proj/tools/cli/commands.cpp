#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <iostream>

#include "ionspin/error.hpp"
#include "ionspin/phase.hpp"
#include "output.hpp"

namespace ionspin::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

fs::path output_dir(const RunConfig& c) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw ConfigError(fmt::format("cannot create {}", c.out));
  return dir;
}

EigenOptions eigen_options(const RunConfig& c) {
  EigenOptions e;
  e.tol = c.tol;
  e.seed = c.seed;
  return e;
}

ojson json_number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson order_json(const SpinOrder& o) {
  return {{"order", o.canonical.to_string()},
          {"degeneracy", o.degeneracy},
          {"reflection_symmetric", o.reflection_symmetric()}};
}

int finish(const RunConfig& c, const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << (fs::path(c.out) / f).string() << "\n";
  if (!c.check) return 0;
  int code = 0;
  for (const auto& r : check_outputs(c.out, files)) {
    std::cout << (r.ok ? "check ok   " : "check FAIL ") << r.file << ": " << r.message << "\n";
    if (!r.ok) code = 3;
  }
  return code;
}

std::vector<double> log_samples(Range r, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(std::exp(std::log(r.first) + t * (std::log(r.second) - std::log(r.first))));
  }
  out.front() = r.first;
  if (count > 1) out.back() = r.second;
  return out;
}

}  // namespace

int cmd_modes(const RunConfig& c) {
  const auto dir = output_dir(c);
  const ChainModes modes = solve_chain(TrapConfig{c.n_ions, c.beta});
  const int n = c.n_ions;
  std::vector<std::string> files;

  if (wants_csv(c)) {
    CsvFile pos(c, {"n", "u_n"});
    for (int i = 0; i < n; ++i) pos.row({std::to_string(i + 1), number(modes.chain.positions[i])});
    pos.write(dir / "positions.csv");

    std::vector<std::string> cols{"k", "omega_k"};
    for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("b_{}", i));
    CsvFile md(c, cols);
    for (int k = 0; k < n; ++k) {
      std::vector<std::string> row{std::to_string(k + 1), number(modes.spectrum.frequencies[k])};
      for (int i = 0; i < n; ++i) row.push_back(number(modes.spectrum.modes(i, k)));
      md.row(row);
    }
    md.write(dir / "modes.csv");
    files.insert(files.end(), {"positions.csv", "modes.csv"});
  }
  if (wants_json(c)) {
    ojson body;
    body["config"] = to_json(c);
    body["positions"] = modes.chain.positions;
    body["modes"] = ojson::array();
    for (int k = 0; k < n; ++k) {
      std::vector<double> b(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) b[i] = modes.spectrum.modes(i, k);
      body["modes"].push_back({{"k", k + 1}, {"omega", modes.spectrum.frequencies[k]}, {"b", b}});
    }
    write_json(dir / "modes.json", body);
    files.push_back("modes.json");
  }
  return finish(c, files);
}

int cmd_couplings(const RunConfig& c) {
  const auto dir = output_dir(c);
  const ChainCouplings chain(TrapConfig{c.n_ions, c.beta});
  const CouplingMatrix j = chain.at(*c.mu_tilde);
  const int n = c.n_ions;
  ojson summary{{"N", n},
                {"beta", c.beta},
                {"mu_tilde", *c.mu_tilde},
                {"mu", j.detuning()->resolved},
                {"jbar", j.jbar()}};
  std::vector<std::string> files;

  if (wants_csv(c)) {
    CsvFile csv(c, {"m", "n", "j_mn"});
    csv.meta("couplings: " + summary.dump());
    for (int m = 0; m < n; ++m)
      for (int p = m + 1; p < n; ++p) csv.row({std::to_string(m + 1), std::to_string(p + 1), number(j(m, p))});
    csv.write(dir / "couplings.csv");
    files.push_back("couplings.csv");
  }
  if (wants_json(c)) {
    ojson body;
    body["config"] = to_json(c);
    for (auto& [k, v] : summary.items()) body[k] = v;
    body["nodes"] = ojson::array();
    for (int i = 0; i < n; ++i) {
      body["nodes"].push_back({{"ion", i + 1}, {"position", chain.chain().positions[i]}});
    }
    body["edges"] = ojson::array();
    for (const Bond& b : bond_graph(j)) {
      body["edges"].push_back(
          {{"m", b.m + 1},
           {"n", b.n + 1},
           {"value", b.value},
           {"weight", b.weight},
           {"kind", b.kind == BondKind::ferromagnetic ? "ferromagnetic" : "antiferromagnetic"}});
    }
    write_json(dir / "bond_graph.json", body);
    files.push_back("bond_graph.json");
  }
  return finish(c, files);
}

int cmd_phase_table(const RunConfig& c) {
  const auto dir = output_dir(c);
  const ChainCouplings chain(TrapConfig{c.n_ions, c.beta});
  PhaseTableOptions opt;
  opt.samples_per_interval = c.samples;
  opt.refine_tol = c.refine_tol;
  const PhaseTable table = phase_table(chain, opt);
  const auto report = even_odd_symmetry_report(table);
  std::vector<std::string> files;

  if (wants_csv(c)) {
    CsvFile csv(c, {"interval", "mu_lo", "mu_hi", "order", "degeneracy", "reflection_symmetric"});
    csv.meta(fmt::format("transitions: {}", table.transition_count()));
    for (const auto& iv : table.intervals) {
      for (const auto& s : iv.segments) {
        csv.row({std::to_string(iv.lower_mode), number(s.lo), number(s.hi),
                 s.order.canonical.to_string(), std::to_string(s.order.degeneracy),
                 s.order.reflection_symmetric() ? "1" : "0"});
      }
    }
    csv.write(dir / "phase_table.csv");
    files.push_back("phase_table.csv");
  }
  if (wants_json(c)) {
    ojson body;
    body["config"] = to_json(c);
    body["N"] = table.n_ions;
    body["beta"] = table.aspect_ratio;
    body["transition_count"] = table.transition_count();
    body["intervals"] = ojson::array();
    for (std::size_t i = 0; i < table.intervals.size(); ++i) {
      const auto& iv = table.intervals[i];
      ojson jv;
      jv["interval"] = {iv.lower_mode, iv.lower_mode + 1};
      jv["segments"] = ojson::array();
      for (const auto& s : iv.segments) {
        ojson js{{"mu_lo", s.lo}, {"mu_hi", s.hi}};
        const ojson order = order_json(s.order);
        for (auto& [k, v] : order.items()) js[k] = v;
        jv["segments"].push_back(js);
      }
      jv["transitions"] = ojson::array();
      for (const auto& t : iv.transitions) {
        jv["transitions"].push_back({{"mu", t.location},
                                     {"bracket", {t.lo, t.hi}},
                                     {"left", t.left.canonical.to_string()},
                                     {"right", t.right.canonical.to_string()},
                                     {"exact_tie", t.exact_tie}});
      }
      const auto& r = report[i];
      jv["report"] = {{"even_to_odd", r.even_to_odd},
                      {"transitions", r.transitions},
                      {"all_reflection_symmetric", r.all_reflection_symmetric},
                      {"flagged", r.flagged},
                      {"note", r.note}};
      body["intervals"].push_back(jv);
    }
    write_json(dir / "phase_table.json", body);
    files.push_back("phase_table.json");
  }
  std::cerr << fmt::format("N={} beta={}: {} transitions\n", table.n_ions, table.aspect_ratio,
                           table.transition_count());
  return finish(c, files);
}

int cmd_scan2d(const RunConfig& c) {
  const auto dir = output_dir(c);
  const ChainCouplings chain(TrapConfig{c.n_ions, c.beta});
  ScanOptions opt;
  opt.mu_lo = c.mu_range->first;
  opt.mu_hi = c.mu_range->second;
  opt.b_lo = c.b_range->first;
  opt.b_hi = c.b_range->second;
  opt.mu_points = c.samples;
  opt.b_points = *c.b_samples;
  opt.threads = c.threads;
  opt.eigen = eigen_options(c);
  const ScanGrid grid = scan_2d(chain, opt);

  for (const auto& p : grid.points) {
    if (!p.ok) {
      std::cerr << fmt::format("point mu={} B/jbar={} failed: {}\n", number(p.mu_tilde),
                               number(p.b_over_jbar), p.error);
    }
  }
  const std::vector<std::string> cols{"mu_tilde", "B_over_Jbar", "order_parameter",
                                      "polarization", "E0", "E1"};
  std::vector<std::string> files;
  if (wants_csv(c)) {
    CsvFile csv(c, cols);
    csv.meta(fmt::format("grid: {} x {} (mu outer), mu {}:{}, failures: {}", opt.mu_points,
                         opt.b_points, number(grid.options.mu_lo), number(grid.options.mu_hi),
                         grid.failures()));
    for (const auto& p : grid.points) {
      const auto v = [&](double x) { return p.ok ? number(x) : std::string("nan"); };
      csv.row({number(p.mu_tilde), number(p.b_over_jbar), v(p.order_parameter), v(p.polarization),
               v(p.e0), v(p.e1)});
    }
    csv.write(dir / "scan2d.csv");
    files.push_back("scan2d.csv");
  }
  if (wants_json(c)) {
    ojson body;
    body["config"] = to_json(c);
    body["mu_points"] = opt.mu_points;
    body["b_points"] = opt.b_points;
    body["failures"] = grid.failures();
    body["columns"] = cols;
    body["rows"] = ojson::array();
    for (const auto& p : grid.points) {
      const auto v = [&](double x) { return p.ok ? json_number(x) : ojson(nullptr); };
      body["rows"].push_back({p.mu_tilde, p.b_over_jbar, v(p.order_parameter), v(p.polarization),
                              v(p.e0), v(p.e1)});
    }
    write_json(dir / "scan2d.json", body);
    files.push_back("scan2d.json");
  }
  const int code = finish(c, files);
  if (grid.failures() * 100 > grid.points.size()) {
    std::cerr << fmt::format("{} of {} grid points failed\n", grid.failures(), grid.points.size());
    return 3;
  }
  return code;
}

int cmd_gap(const RunConfig& c) {
  const auto dir = output_dir(c);
  const auto window = log_samples(*c.b_range, *c.b_samples);
  for (double b : window) {
    if (!(b > 0.0 && b <= 0.1)) throw ConfigError(fmt::format("B/(N jbar) = {} outside (0, 0.1]", b));
  }
  GapOptions opt;
  opt.eigen = eigen_options(c);

  struct Series {
    int n;
    std::vector<std::optional<GapResult>> gaps;
    std::optional<PowerLawFit> fit;
  };
  std::vector<Series> series;
  std::size_t failures = 0;
  for (int n : c.n_list) {
    const ChainCouplings chain(TrapConfig{n, c.beta});
    const auto [lo, hi] = fm_kink_bracket(n);
    Series s{n, {}, {}};
    std::vector<double> xs, ys;
    for (double b : window) {
      try {
        const GapResult g = min_gap(chain, Field::in_n_jbar(b), lo, hi, opt);
        xs.push_back(b);
        ys.push_back(g.gap);
        s.gaps.emplace_back(g);
      } catch (const NumericalError& e) {
        std::cerr << fmt::format("N={} B/(N jbar)={}: {}\n", n, number(b), e.what());
        s.gaps.emplace_back();
        ++failures;
      }
    }
    if (xs.size() >= 5) s.fit = fit_power_law(xs, ys);
    std::cerr << fmt::format("N={}: alpha={} from {} samples\n", n,
                             s.fit ? fmt::format("{:.4f}", s.fit->exponent) : "n/a", xs.size());
    series.push_back(std::move(s));
  }

  std::optional<LinearFit> line;
  std::vector<double> ns, alphas;
  for (const auto& s : series) {
    if (!s.fit) continue;
    ns.push_back(s.n);
    alphas.push_back(s.fit->exponent);
  }
  if (ns.size() >= 2) line = linear_fit(ns, alphas);

  std::vector<std::string> files;
  if (wants_csv(c)) {
    CsvFile csv(c, {"N", "B_over_NJbar", "delta_E", "mu_star", "jbar", "full_gap",
                    "level_crossing"});
    for (const auto& s : series) {
      for (std::size_t i = 0; i < window.size(); ++i) {
        const auto& g = s.gaps[i];
        if (!g) {
          csv.row({std::to_string(s.n), number(window[i]), "nan", "nan", "nan", "nan", ""});
          continue;
        }
        csv.row({std::to_string(s.n), number(window[i]), number(g->gap), number(g->mu_tilde),
                 number(g->jbar), number(g->full_gap),
                 g->level_crossing ? number(*g->level_crossing) : std::string()});
      }
    }
    csv.write(dir / "gap_scaling.csv");
    files.push_back("gap_scaling.csv");
  }
  if (wants_json(c)) {
    ojson body;
    body["config"] = to_json(c);
    body["fits"] = ojson::array();
    for (const auto& s : series) {
      const auto used = std::count_if(s.gaps.begin(), s.gaps.end(), [](const auto& g) { return g.has_value(); });
      ojson f{{"N", s.n}, {"samples_used", used}, {"expected", (s.n - 1) / 2.0}};
      f["alpha"] = s.fit ? ojson(s.fit->exponent) : ojson(nullptr);
      f["prefactor"] = s.fit ? ojson(s.fit->prefactor) : ojson(nullptr);
      f["rms_log_residual"] = s.fit ? ojson(s.fit->rms_log_residual) : ojson(nullptr);
      body["fits"].push_back(f);
    }
    if (line) {
      body["linear_fit"] = {
          {"slope", line->slope}, {"intercept", line->intercept}, {"rms_residual", line->rms_residual}};
    } else {
      body["linear_fit"] = nullptr;
    }
    write_json(dir / "alpha_fit.json", body);
    files.push_back("alpha_fit.json");
  }
  const int code = finish(c, files);
  const std::size_t total = series.size() * window.size();
  if (failures * 100 > total) {
    std::cerr << fmt::format("{} of {} gap samples failed\n", failures, total);
    return 3;
  }
  return code;
}

int cmd_check(const RunConfig& c) {
  const auto results = check_outputs(c.out);
  if (results.empty()) throw ConfigError(fmt::format("no ionspin output files in {}", c.out));
  int code = 0;
  for (const auto& r : results) {
    std::cout << (r.ok ? "ok   " : "FAIL ") << r.file << ": " << r.message << "\n";
    if (!r.ok) code = 3;
  }
  return code;
}

}  // namespace ionspin::cli
