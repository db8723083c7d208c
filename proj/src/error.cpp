#include "uwiqa/error.hpp"

namespace uwiqa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kDecode: return "decode";
    case ErrorKind::kUnsupportedFormat: return "unsupported-format";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kDegenerateSize: return "degenerate-size";
    case ErrorKind::kUndefinedAngle: return "undefined-angle";
    case ErrorKind::kEmptyAfterTrim: return "empty-after-trim";
    case ErrorKind::kEmptyInterior: return "empty-interior";
    case ErrorKind::kMalformedAnnotation: return "malformed-annotation";
    case ErrorKind::kDuplicateLabel: return "duplicate-label";
    case ErrorKind::kUnmatchedLabel: return "unmatched-label";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace uwiqa
