#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gallai_lab {

enum class ErrorCode {
  MissingPair,
  ColorOutOfRange,
  EmptySubset,
  ArityMismatch,
  SizeLimitExceeded,
  ParseError,
  IoError,
  InvalidArgument,
  DiracPreconditionFailed,
  DegreePreconditionFailed,
  NotGallai,
  InvalidPartition,
  HypothesisViolated,
  BadParameters,
  OverLimit,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the 1-based physical line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message),
        line_(line),
        detail_("line " + std::to_string(line) + ": " + message) {}

  int line() const { return line_; }
  /// "line N: ..." without the error-code prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string detail_;
};

/// A per-vertex degree hypothesis failed; `vertex` is the lowest offender (or -1
/// when the failure is about the order rather than a vertex).
class PreconditionError : public Error {
 public:
  PreconditionError(ErrorCode code, int vertex, int degree, const std::string& message)
      : Error(code, message), vertex_(vertex), degree_(degree) {}

  int vertex() const { return vertex_; }
  int degree() const { return degree_; }

 private:
  int vertex_;
  int degree_;
};

}  // namespace gallai_lab
