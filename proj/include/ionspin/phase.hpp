#pragma once

// Sweeps over the rescaled detuning and the transverse field: the B = 0 phase
// table, 2-D order-parameter maps, and the ferromagnet-kink gap scaling.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ionspin/coupling.hpp"
#include "ionspin/eigensolver.hpp"
#include "ionspin/fit.hpp"
#include "ionspin/spin.hpp"

namespace ionspin {

// ---------------------------------------------------------------------------
// B = 0 phase table

struct PhaseSegment {
  double lo = 0.0;
  double hi = 0.0;
  SpinOrder order;
};

struct PhaseTransition {
  double location = 0.0;
  double lo = 0.0;  // bracket, hi - lo <= refine_tol
  double hi = 0.0;
  SpinOrder left;
  SpinOrder right;
  bool exact_tie = false;  // a bisection midpoint landed on the crossing
};

struct IntervalPhases {
  int lower_mode = 0;  // interval (k, k+1)
  std::vector<PhaseSegment> segments;
  std::vector<PhaseTransition> transitions;
};

struct PhaseTableOptions {
  int samples_per_interval = 64;
  double refine_tol = 1e-9;
  /// Closest approach to a mode; the uniform grid is densified
  /// geometrically toward both ends down to this distance.
  double edge_guard = 2e-6;
};

struct PhaseTable {
  int n_ions = 0;
  double aspect_ratio = 0.0;
  PhaseTableOptions options;
  std::vector<IntervalPhases> intervals;

  int transition_count() const noexcept;
};

/// Ground spin order at one detuning. Throws AmbiguousGround on a tie.
SpinOrder ground_order(const ChainCouplings& chain, double mu_tilde);

/// Sample points used inside the interval (k, k+1), ascending.
std::vector<double> interval_samples(int lower_mode, const PhaseTableOptions& options);

PhaseTable phase_table(const ChainCouplings& chain, const PhaseTableOptions& options = {});

struct IntervalReport {
  int lower_mode = 0;
  bool even_to_odd = false;  // (2k, 2k+1)
  int transitions = 0;
  bool all_reflection_symmetric = false;
  bool flagged = false;  // even-to-odd interval that breaks the usual pattern
  std::string note;
  std::vector<SpinOrder> orders;
};

std::vector<IntervalReport> even_odd_symmetry_report(const PhaseTable& table);

// ---------------------------------------------------------------------------
// Ground-state observables at finite field (flip-even sector)

struct GroundProbe {
  double mu_tilde = 0.0;
  double field = 0.0;  // coupling units
  double jbar = 0.0;
  double e0 = 0.0;  // lowest two flip-even levels
  double e1 = 0.0;
  double p_ferro = 0.0;
  double p_kink = 0.0;
  double polarization = 0.0;

  double order_parameter() const noexcept { return p_ferro - p_kink; }
};

/// Needs odd N >= 3 (kink basis).
GroundProbe probe_ground(const ChainCouplings& chain, double mu_tilde, Field field,
                         const EigenOptions& eigen = {});

struct ScanOptions {
  double mu_lo = 0.0;
  double mu_hi = 0.0;
  double b_lo = 0.0;  // units of jbar
  double b_hi = 0.0;
  int mu_points = 128;
  int b_points = 64;
  int threads = 1;  // <= 0: hardware concurrency
  EigenOptions eigen;
};

struct ScanPoint {
  double mu_tilde = 0.0;
  double b_over_jbar = 0.0;
  bool ok = false;
  double order_parameter = 0.0;
  double polarization = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  std::string error;
};

struct ScanGrid {
  int n_ions = 0;
  double aspect_ratio = 0.0;
  ScanOptions options;
  std::vector<ScanPoint> points;  // row-major: mu index outer, B index inner

  const ScanPoint& at(int mu_index, int b_index) const {
    return points[static_cast<std::size_t>(mu_index) * options.b_points + b_index];
  }
  std::size_t failures() const noexcept;
};

/// Grid values independent of thread count; failing points are kept with
/// ok = false. A range end lying on a mode is moved 2e-6 into the range and
/// the returned options hold the grid actually used.
ScanGrid scan_2d(const ChainCouplings& chain, const ScanOptions& options);

// ---------------------------------------------------------------------------
// Ferromagnet-kink transition: avoided-crossing gap and width

struct GapOptions {
  int scan_points = 64;
  double location_tol = 1e-13;
  bool detect_level_crossing = true;
  EigenOptions eigen;
};

struct GapResult {
  double mu_tilde = 0.0;  // location of the minimum gap
  double gap = 0.0;       // E1 - E0 in the flip-even sector
  double field = 0.0;     // coupling units at mu_tilde
  double jbar = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::array<double, 4> full_levels{};  // four lowest levels of the full space
  double full_gap = 0.0;                // full-space E1 - E0 (flip-pair splitting)
  std::optional<double> level_crossing;  // where flip-even levels 1 and 2 cross
};

/// Interval (N-2, N-1) minus a small guard at the poles.
std::pair<double, double> fm_kink_bracket(int n);

/// Locates the sign change of P_FM - P_K inside [lo, hi] by bisection, then
/// minimizes the flip-even gap around it by golden-section search.
GapResult min_gap(const ChainCouplings& chain, Field field, double lo, double hi,
                  const GapOptions& options = {});

/// mu-width over which P_FM - P_K falls from +0.5 to -0.5; empty when the
/// order parameter never reaches both thresholds inside [lo, hi].
std::optional<double> transition_width(const ChainCouplings& chain, Field field, double lo,
                                       double hi, const GapOptions& options = {});

/// 8 logarithmic samples of B/(N jbar) over [0.01, 0.1].
std::vector<double> default_fit_window();

struct AlphaFit {
  int n_ions = 0;
  double aspect_ratio = 0.0;
  std::vector<double> b_over_njbar;
  std::vector<GapResult> gaps;
  PowerLawFit fit;
};

/// Power law gap ~ (B / N jbar)^alpha over at least 5 samples in (0, 0.1].
AlphaFit fit_alpha(const ChainCouplings& chain, std::span<const double> b_over_njbar,
                   const GapOptions& options = {});

struct AlphaScaling {
  std::vector<AlphaFit> fits;
  LinearFit line;  // alpha against N
};

AlphaScaling alpha_vs_n(std::span<const int> ions, double aspect_ratio,
                        std::span<const double> b_over_njbar, const GapOptions& options = {});

}  // namespace ionspin
