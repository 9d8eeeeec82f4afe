#pragma once

#include <stdexcept>
#include <string>

namespace swstat {

/// Bad input data or files: malformed manifest/CSV, unknown labels, IO failures.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input on which an analysis is refused (degenerate mean, too few points, ...).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swstat
