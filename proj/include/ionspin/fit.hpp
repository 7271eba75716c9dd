#pragma once

#include <span>

namespace ionspin {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept (at least 2 points,
/// x not all equal).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double rms_log_residual = 0.0;
};

/// y = prefactor * x^exponent by least squares on (log x, log y). Every x and
/// y must be strictly positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace ionspin
