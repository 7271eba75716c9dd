#include "ionspin/fit.hpp"

#include <cmath>
#include <fmt/format.h>
#include <vector>

#include "ionspin/error.hpp"

namespace ionspin {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("linear fit: x and y differ in length");
  if (x.size() < 2) throw ConfigError("linear fit needs at least two points");

  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("linear fit: all x values are equal");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("power-law fit: x and y differ in length");
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw ConfigError(fmt::format("power-law fit: x[{}] = {} not positive", i, x[i]));
    if (!(y[i] > 0.0)) {
      throw NumericalError(fmt::format("power-law fit: y[{}] = {} not positive", i, y[i]));
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const LinearFit line = linear_fit(lx, ly);
  return {line.slope, std::exp(line.intercept), line.rms_residual};
}

}  // namespace ionspin
