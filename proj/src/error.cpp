// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/error.hpp"

namespace phaseret {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileNotFound: return "file-not-found";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kUnsupportedFormat: return "unsupported-format";
    case ErrorKind::kMalformedFile: return "malformed-file";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kShapeMismatch: return "shape-mismatch";
    case ErrorKind::kNonFinite: return "non-finite";
    case ErrorKind::kUndefinedMetric: return "undefined-metric";
  }
  return "unknown";
}

}  // namespace phaseret
