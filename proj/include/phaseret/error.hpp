// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace phaseret {

enum class ErrorKind {
  kFileNotFound,
  kIo,
  kUnsupportedFormat,
  kMalformedFile,
  kInvalidArgument,
  kShapeMismatch,
  kNonFinite,
  kUndefinedMetric,
};

const char* ToString(ErrorKind kind);

// Every failure raised by the library carries one of the categories above so
// callers (the CLI in particular) can report them distinctly.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phaseret
