#include "ionspin/phase.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "ionspin/error.hpp"
#include "ionspin/hamiltonian.hpp"
#include "parallel.hpp"

namespace ionspin {
namespace {

constexpr double kFmKinkGuard = 5e-3;
constexpr int kMaxBisections = 200;
constexpr double kEdgeOffset = 2e-6;

double linspace(double lo, double hi, int n, int i) {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

struct Sample {
  double mu;
  std::optional<SpinOrder> order;  // empty on an exact tie
};

Sample sample(const ChainCouplings& chain, double mu) {
  try {
    return {mu, ground_order(chain, mu)};
  } catch (const AmbiguousGround&) {
    return {mu, std::nullopt};
  }
}

void refine(const ChainCouplings& chain, double a, const SpinOrder& left, double b,
            const SpinOrder& right, double tol, std::vector<PhaseTransition>& out) {
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const Sample s = sample(chain, m);
    if (!s.order) {
      out.push_back({m, m, m, left, right, true});
      return;
    }
    if (*s.order == left) {
      a = m;
    } else if (*s.order == right) {
      b = m;
    } else {
      refine(chain, a, left, m, *s.order, tol, out);
      refine(chain, m, *s.order, b, right, tol, out);
      return;
    }
  }
  out.push_back({0.5 * (a + b), a, b, left, right, false});
}

IntervalPhases interval_phases(const ChainCouplings& chain, int k,
                               const PhaseTableOptions& options) {
  std::vector<Sample> samples;
  for (double mu : interval_samples(k, options)) {
    Sample s = sample(chain, mu);
    if (s.order) samples.push_back(std::move(s));
  }
  if (samples.empty()) {
    throw NumericalError(fmt::format("no unambiguous ground order inside ({}, {})", k, k + 1));
  }

  IntervalPhases out;
  out.lower_mode = k;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const SpinOrder& left = *samples[i - 1].order;
    const SpinOrder& right = *samples[i].order;
    if (left == right) continue;
    refine(chain, samples[i - 1].mu, left, samples[i].mu, right, options.refine_tol,
           out.transitions);
  }

  double start = k;
  for (const PhaseTransition& t : out.transitions) {
    out.segments.push_back({start, t.location, t.left});
    start = t.location;
  }
  out.segments.push_back({start, static_cast<double>(k + 1), *samples.back().order});
  return out;
}

void require_odd_chain(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ConfigError(fmt::format("FM-kink analysis needs odd N >= 3, got {}", n));
  }
}

// <v|R|v> for flip-even level `which`, R the chain reflection.
double reflection_parity(const SpectrumResult& res, int which) {
  const auto& v = res.eigenvectors[static_cast<std::size_t>(which)];
  double sum = 0.0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    sum += v[s] * v[SpinConfig(res.n_spins, s).reversed().index()];
  }
  return sum;
}

std::optional<double> level_parity(const ChainCouplings& chain, double mu, Field field,
                                   const EigenOptions& eigen) {
  const auto res = lowest_eigenpairs(chain.at(mu), field, 3, eigen, Sector::flip_even);
  if (degenerate_cluster(res, 1).size() > 1) return std::nullopt;
  return reflection_parity(res, 1);
}

// First point right of `from` where flip-even level 1 changes reflection
// parity from even to odd.
std::optional<double> find_level_crossing(const ChainCouplings& chain, Field field, double from,
                                          double hi, const EigenOptions& eigen) {
  constexpr int kSteps = 32;
  double prev_mu = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < kSteps; ++i) {
    const double mu = linspace(from, hi, kSteps, i);
    const auto p = level_parity(chain, mu, field, eigen);
    if (!p) {
      prev_mu = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (*p < -0.5 && !std::isnan(prev_mu)) {
      double a = prev_mu;
      double b = mu;
      for (int it = 0; it < kMaxBisections && b - a > 1e-10; ++it) {
        const double m = 0.5 * (a + b);
        const auto pm = level_parity(chain, m, field, eigen);
        if (!pm) return m;
        (*pm > 0.0 ? a : b) = m;
      }
      return 0.5 * (a + b);
    }
    prev_mu = *p > 0.5 ? mu : std::numeric_limits<double>::quiet_NaN();
  }
  return std::nullopt;
}

struct OrderScan {
  std::vector<double> mu;
  std::vector<double> op;
  std::size_t peak = 0;
};

OrderScan scan_order(const ChainCouplings& chain, Field field, double lo, double hi,
                     const GapOptions& options) {
  if (!(lo < hi)) throw ConfigError(fmt::format("empty bracket [{}, {}]", lo, hi));
  if (options.scan_points < 4) throw ConfigError("gap scan needs at least 4 points");
  OrderScan s;
  for (int i = 0; i < options.scan_points; ++i) {
    const double mu = linspace(lo, hi, options.scan_points, i);
    s.mu.push_back(mu);
    s.op.push_back(probe_ground(chain, mu, field, options.eigen).order_parameter());
  }
  s.peak = static_cast<std::size_t>(std::max_element(s.op.begin(), s.op.end()) - s.op.begin());
  return s;
}

// Root of P_FM - P_K - level inside [a, b], assuming it decreases.
double bisect_order(const ChainCouplings& chain, Field field, double a, double b, double level,
                    const GapOptions& options) {
  for (int it = 0; it < kMaxBisections && b - a > options.location_tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double op = probe_ground(chain, m, field, options.eigen).order_parameter();
    (op >= level ? a : b) = m;
  }
  return 0.5 * (a + b);
}

// Index of the first sample after the peak with order parameter below level.
std::optional<std::size_t> first_below(const OrderScan& s, double level, std::size_t from) {
  for (std::size_t i = std::max(from, s.peak + 1); i < s.op.size(); ++i) {
    if (s.op[i] < level) return i;
  }
  return std::nullopt;
}

}  // namespace

int PhaseTable::transition_count() const noexcept {
  int count = 0;
  for (const auto& interval : intervals) count += static_cast<int>(interval.transitions.size());
  return count;
}

SpinOrder ground_order(const ChainCouplings& chain, double mu_tilde) {
  return classical_ground(chain.at(mu_tilde)).order;
}

std::vector<double> interval_samples(int lower_mode, const PhaseTableOptions& options) {
  const int s = options.samples_per_interval;
  if (s < 16) throw ConfigError(fmt::format("samples_per_interval must be >= 16, got {}", s));
  const double step = 1.0 / s;
  if (!(options.edge_guard > kResonanceGuard && options.edge_guard < step)) {
    throw ConfigError(fmt::format("edge_guard must lie in ({}, {}), got {}", kResonanceGuard,
                                  step, options.edge_guard));
  }

  const double k = lower_mode;
  std::vector<double> out;
  for (int i = 1; i < s; ++i) out.push_back(k + i * step);
  for (double d = 0.5 * step; d >= options.edge_guard; d *= 0.5) {
    out.push_back(k + d);
    out.push_back(k + 1.0 - d);
  }
  out.push_back(k + options.edge_guard);
  out.push_back(k + 1.0 - options.edge_guard);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PhaseTable phase_table(const ChainCouplings& chain, const PhaseTableOptions& options) {
  const int n = chain.size();
  if (n < 3) throw ConfigError(fmt::format("phase table needs N >= 3, got {}", n));
  if (!(options.refine_tol > 0.0 && options.refine_tol <= 1e-6)) {
    throw ConfigError(fmt::format("refine_tol must lie in (0, 1e-6], got {}", options.refine_tol));
  }
  PhaseTable table;
  table.n_ions = n;
  table.aspect_ratio = chain.config().aspect_ratio;
  table.options = options;
  for (int k = 1; k < n; ++k) table.intervals.push_back(interval_phases(chain, k, options));
  return table;
}

std::vector<IntervalReport> even_odd_symmetry_report(const PhaseTable& table) {
  std::vector<IntervalReport> out;
  for (const IntervalPhases& interval : table.intervals) {
    IntervalReport r;
    r.lower_mode = interval.lower_mode;
    r.even_to_odd = interval.lower_mode % 2 == 0;
    r.transitions = static_cast<int>(interval.transitions.size());
    r.all_reflection_symmetric = true;
    for (const PhaseSegment& seg : interval.segments) {
      if (r.orders.empty() || !(r.orders.back() == seg.order)) r.orders.push_back(seg.order);
      r.all_reflection_symmetric = r.all_reflection_symmetric && seg.order.reflection_symmetric();
    }
    const bool quiet = r.transitions == 0 && r.all_reflection_symmetric;
    if (quiet) {
      r.note = "reflection-symmetric, no transition";
    } else if (r.transitions == 0) {
      r.note = "no transition, reflection-broken order";
    } else {
      r.note = fmt::format("{} transition(s)", r.transitions);
    }
    r.flagged = r.even_to_odd && !quiet;
    if (r.flagged) r.note = "exception: " + r.note;
    out.push_back(std::move(r));
  }
  return out;
}

GroundProbe probe_ground(const ChainCouplings& chain, double mu_tilde, Field field,
                         const EigenOptions& eigen) {
  const int n = chain.size();
  require_odd_chain(n);
  const CouplingMatrix j = chain.at(mu_tilde);
  const auto res = lowest_eigenpairs(j, field, 2, eigen, Sector::flip_even);
  const auto ferro = ferro_basis(n);
  const auto kink = kink_basis(n);

  GroundProbe p;
  p.mu_tilde = mu_tilde;
  p.field = field.resolve(j);
  p.jbar = j.jbar();
  p.e0 = res.eigenvalues[0];
  p.e1 = res.eigenvalues[1];
  p.p_ferro = subspace_projection(res, ferro, 0);
  p.p_kink = subspace_projection(res, kink, 0);
  p.polarization = polarization(res, 0);
  return p;
}

std::size_t ScanGrid::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const ScanPoint& p) { return !p.ok; }));
}

ScanGrid scan_2d(const ChainCouplings& chain, const ScanOptions& options) {
  require_odd_chain(chain.size());
  if (options.mu_points < 1 || options.b_points < 1) {
    throw ConfigError("scan grid needs at least one point per axis");
  }
  if (!(options.mu_lo <= options.mu_hi)) throw ConfigError("mu range is reversed");
  if (!(options.b_lo >= 0.0 && options.b_lo <= options.b_hi)) {
    throw ConfigError("B range must satisfy 0 <= lo <= hi");
  }

  ScanGrid grid;
  grid.n_ions = chain.size();
  grid.aspect_ratio = chain.config().aspect_ratio;
  grid.options = options;
  // A range that starts or ends on a mode means the open interval.
  auto on_mode = [](double mu) { return std::abs(mu - std::round(mu)) < kResonanceGuard; };
  if (options.mu_lo < options.mu_hi) {
    if (on_mode(options.mu_lo)) grid.options.mu_lo = std::round(options.mu_lo) + kEdgeOffset;
    if (on_mode(options.mu_hi)) grid.options.mu_hi = std::round(options.mu_hi) - kEdgeOffset;
  }
  grid.points.resize(static_cast<std::size_t>(options.mu_points) * options.b_points);

  const ScanOptions& grid_opt = grid.options;
  detail::parallel_for(grid.points.size(), options.threads, [&](std::size_t idx) {
    const int im = static_cast<int>(idx / options.b_points);
    const int ib = static_cast<int>(idx % options.b_points);
    ScanPoint& pt = grid.points[idx];
    pt.mu_tilde = linspace(grid_opt.mu_lo, grid_opt.mu_hi, options.mu_points, im);
    pt.b_over_jbar = linspace(options.b_lo, options.b_hi, options.b_points, ib);
    try {
      const GroundProbe p =
          probe_ground(chain, pt.mu_tilde, Field::in_jbar(pt.b_over_jbar), options.eigen);
      pt.ok = true;
      pt.order_parameter = p.order_parameter();
      pt.polarization = p.polarization;
      pt.e0 = p.e0;
      pt.e1 = p.e1;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  });
  return grid;
}

std::pair<double, double> fm_kink_bracket(int n) {
  require_odd_chain(n);
  return {n - 2 + kFmKinkGuard, n - 1 - kFmKinkGuard};
}

GapResult min_gap(const ChainCouplings& chain, Field field, double lo, double hi,
                  const GapOptions& options) {
  if (!(options.location_tol > 0.0)) throw ConfigError("location_tol must be positive");
  const OrderScan s = scan_order(chain, field, lo, hi, options);
  if (!(s.op[s.peak] > 0.0)) {
    throw NumericalError(fmt::format("no ferromagnetic side inside [{}, {}]", lo, hi));
  }
  const auto j_neg = first_below(s, 0.0, 0);
  if (!j_neg) {
    throw NumericalError(fmt::format("no kink side right of mu = {} inside [{}, {}]",
                                     s.mu[s.peak], lo, hi));
  }
  const double x = bisect_order(chain, field, s.mu[*j_neg - 1], s.mu[*j_neg], 0.0, options);

  auto gap_at = [&](double mu) {
    const GroundProbe p = probe_ground(chain, mu, field, options.eigen);
    return p.e1 - p.e0;
  };

  double best_mu = x;
  double best_gap = gap_at(x);
  if (field.value != 0.0) {
    const double h = s.mu[1] - s.mu[0];
    double a = std::max(lo, x - h);
    double b = std::min(hi, x + h);
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = gap_at(c);
    double gd = gap_at(d);
    for (int it = 0; it < kMaxBisections && b - a > options.location_tol; ++it) {
      if (gc < gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - inv_phi * (b - a);
        gc = gap_at(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + inv_phi * (b - a);
        gd = gap_at(d);
      }
    }
    for (auto [mu, g] : {std::pair{c, gc}, std::pair{d, gd}}) {
      if (g < best_gap) {
        best_gap = g;
        best_mu = mu;
      }
    }
  }

  GapResult r;
  r.mu_tilde = best_mu;
  r.gap = best_gap;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  const CouplingMatrix j = chain.at(best_mu);
  r.field = field.resolve(j);
  r.jbar = j.jbar();
  const auto full = lowest_eigenpairs(j, field, 4, options.eigen, Sector::full);
  std::copy_n(full.eigenvalues.begin(), 4, r.full_levels.begin());
  r.full_gap = full.eigenvalues[1] - full.eigenvalues[0];
  if (options.detect_level_crossing && r.field > 0.0) {
    r.level_crossing = find_level_crossing(chain, field, best_mu, hi, options.eigen);
  }
  return r;
}

std::optional<double> transition_width(const ChainCouplings& chain, Field field, double lo,
                                       double hi, const GapOptions& options) {
  const OrderScan s = scan_order(chain, field, lo, hi, options);
  if (!(s.op[s.peak] > 0.5)) return std::nullopt;
  const auto upper = first_below(s, 0.5, 0);
  if (!upper) return std::nullopt;
  const auto lower = first_below(s, -0.5, *upper);
  if (!lower) return std::nullopt;
  const double x_hi = bisect_order(chain, field, s.mu[*upper - 1], s.mu[*upper], 0.5, options);
  const double x_lo = bisect_order(chain, field, s.mu[*lower - 1], s.mu[*lower], -0.5, options);
  return x_lo - x_hi;
}

std::vector<double> default_fit_window() {
  constexpr int kSamples = 8;
  std::vector<double> out;
  for (int i = 0; i < kSamples; ++i) {
    out.push_back(std::pow(10.0, -2.0 + static_cast<double>(i) / (kSamples - 1)));
  }
  return out;
}

AlphaFit fit_alpha(const ChainCouplings& chain, std::span<const double> b_over_njbar,
                   const GapOptions& options) {
  require_odd_chain(chain.size());
  if (b_over_njbar.size() < 5) {
    throw ConfigError(fmt::format("alpha fit needs >= 5 field samples, got {}", b_over_njbar.size()));
  }
  for (double b : b_over_njbar) {
    if (!(b > 0.0 && b <= 0.1)) {
      throw ConfigError(fmt::format("B/(N jbar) = {} outside (0, 0.1]", b));
    }
  }

  AlphaFit out;
  out.n_ions = chain.size();
  out.aspect_ratio = chain.config().aspect_ratio;
  out.b_over_njbar.assign(b_over_njbar.begin(), b_over_njbar.end());
  const auto [lo, hi] = fm_kink_bracket(chain.size());
  std::vector<double> gaps;
  for (double b : b_over_njbar) {
    out.gaps.push_back(min_gap(chain, Field::in_n_jbar(b), lo, hi, options));
    gaps.push_back(out.gaps.back().gap);
  }
  out.fit = fit_power_law(out.b_over_njbar, gaps);
  if (!(out.fit.exponent > 0.0)) {
    throw NumericalError(fmt::format("fitted exponent {} for N = {} is not positive",
                                     out.fit.exponent, chain.size()));
  }
  return out;
}

AlphaScaling alpha_vs_n(std::span<const int> ions, double aspect_ratio,
                        std::span<const double> b_over_njbar, const GapOptions& options) {
  if (ions.size() < 2) throw ConfigError("alpha scaling needs at least two chain lengths");
  AlphaScaling out;
  std::vector<double> ns;
  std::vector<double> alphas;
  for (int n : ions) {
    require_odd_chain(n);
    const ChainCouplings chain(TrapConfig{n, aspect_ratio});
    out.fits.push_back(fit_alpha(chain, b_over_njbar, options));
    ns.push_back(n);
    alphas.push_back(out.fits.back().fit.exponent);
  }
  out.line = linear_fit(ns, alphas);
  return out;
}

}  // namespace ionspin
