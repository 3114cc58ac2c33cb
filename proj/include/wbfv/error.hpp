#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace wbfv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A thermodynamic input lies outside the domain of the equation of state.
class InvalidThermoState : public Error {
 public:
  using Error::Error;
};

/// Iterative inversion of the equation of state did not converge.
class InversionFailure : public Error {
 public:
  using Error::Error;
};

/// Radicand of the sound speed is not positive.
class HyperbolicityLoss : public Error {
 public:
  using Error::Error;
};

/// Non-positive density or internal energy found while converting states.
/// Carries the cell index when the conversion happened inside a grid sweep.
class UnphysicalState : public Error {
 public:
  explicit UnphysicalState(const std::string& what, std::optional<long> cell = std::nullopt)
      : Error(cell ? what + " (cell " + std::to_string(*cell) + ")" : what), cell_(cell) {}

  [[nodiscard]] std::optional<long> cell() const noexcept { return cell_; }

 private:
  std::optional<long> cell_;
};

/// Discrete hydrostatic construction failed at a given grid point.
class EquilibriumError : public Error {
 public:
  EquilibriumError(const std::string& what, long index)
      : Error(what + " (point " + std::to_string(index) + ")"), index_(index) {}

  [[nodiscard]] long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Bad time step or CFL request.
class TimeStepError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: unknown case, malformed key, wrong shapes.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wbfv
