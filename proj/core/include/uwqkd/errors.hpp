#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uwqkd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the physical model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No correction-coefficient row covers the requested (divergence, diameter).
class NoCorrectionData : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its evaluation budget before meeting the
/// requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double error_estimate,
                   std::size_t evaluations)
      : Error(what), error_estimate_(error_estimate), evaluations_(evaluations) {}

  double error_estimate() const noexcept { return error_estimate_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double error_estimate_;
  std::size_t evaluations_;
};

/// A computed quantity violated an invariant it must satisfy by construction.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The achievable-distance search could not establish a valid bracket.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// Invalid or unparsable configuration. `field()` names the offending key
/// (dotted path) when one is known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace uwqkd
