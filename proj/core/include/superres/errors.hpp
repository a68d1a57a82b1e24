#pragma once

#include <stdexcept>
#include <string>

namespace superres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented domain (non-positive width, p > 1, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Input data is malformed: unsorted abscissae, empty frames, zero denominators.
class DataError : public Error {
public:
  using Error::Error;
};

/// A model-level inconsistency, e.g. non-orthogonal projection modes or stale probabilities.
class ModelError : public Error {
public:
  using Error::Error;
};

/// The function has no usable derivative (zero quantum Fisher information).
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration file or unknown key.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Numerical procedure failed to meet its tolerance. Carries the best
/// estimate and its error bound so callers may decide to accept it.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what, double best_estimate, double error_bound);

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

private:
  double best_estimate_;
  double error_bound_;
};

} // namespace superres
