#pragma once

#include <stdexcept>
#include <string>

namespace uwiqa {

enum class ErrorKind {
  kIo,
  kDecode,
  kUnsupportedFormat,
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateSize,
  kUndefinedAngle,
  kEmptyAfterTrim,
  kEmptyInterior,
  kMalformedAnnotation,
  kDuplicateLabel,
  kUnmatchedLabel,
  kConfig,
};

const char* to_string(ErrorKind kind);

// Every failure in the library surfaces as this exception; `kind()` lets
// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace uwiqa
