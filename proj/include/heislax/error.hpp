#pragma once

#include <stdexcept>
#include <string>

namespace heislax {

enum class ErrorCode {
  invalid_argument,
  degenerate_metric,
  not_a_derivation,
  divergence,
};

/// Base of every exception thrown by the library. The code survives the trip
/// through the C API, the message becomes heislax_last_error().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(const std::string& what) : Error(ErrorCode::degenerate_metric, what) {}
};

class NotADerivation : public Error {
 public:
  explicit NotADerivation(const std::string& what) : Error(ErrorCode::not_a_derivation, what) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(ErrorCode::divergence, what) {}
};

}  // namespace heislax
