#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace drpkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. a probability of 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& what, std::size_t pivot)
      : Error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class NormalizationError : public Error {
 public:
  NormalizationError(const std::string& what, std::size_t dimension)
      : Error(what), dimension_(dimension) {}
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

/// A reference policy cannot be applied to the given observation.
class PolicyError : public Error {
 public:
  using Error::Error;
};

/// The sampler lacks an optional capability (density evaluation).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Invalid benchmark or model configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reverse-SDE integration produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Failure while processing one simulation; carries the sim id.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, std::uint64_t sim_id)
      : Error("sim " + std::to_string(sim_id) + ": " + what), sim_id_(sim_id) {}
  std::uint64_t sim_id() const noexcept { return sim_id_; }

 private:
  std::uint64_t sim_id_;
};

}  // namespace drpkit
