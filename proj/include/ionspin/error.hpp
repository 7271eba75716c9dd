#pragma once

#include <stdexcept>
#include <string>

namespace ionspin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad ion count, out-of-range detuning, bad grid, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Detuning sits on (or within the guard distance of) a phonon mode, where
/// the coupling sum diverges.
class ResonanceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Numerical failure: non-convergence, instability, degenerate spectrum.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ZigzagInstability : public NumericalError {
 public:
  ZigzagInstability(const std::string& what, double eigenvalue)
      : NumericalError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : NumericalError(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace ionspin
