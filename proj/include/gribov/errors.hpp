#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gribov {

enum class ErrorKind {
  kInvalidTruncation,
  kInvalidParameter,
  kInvalidIndex,
  kInvalidInput,
  kUnsupportedConfiguration,
  kIterationLimit,
  kIllSeparatedClusters,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics (as opposed to bad user input).
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::kIterationLimit ||
           kind_ == ErrorKind::kIllSeparatedClusters;
  }

 private:
  ErrorKind kind_;
};

/// Raised when the QR iteration exhausts its sweep budget. Carries the
/// eigenvalues that had already deflated.
class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what,
                      std::vector<std::complex<double>> partial)
      : Error(ErrorKind::kIterationLimit, what), partial_(std::move(partial)) {}

  const std::vector<std::complex<double>>& partial_eigenvalues() const {
    return partial_;
  }

 private:
  std::vector<std::complex<double>> partial_;
};

}  // namespace gribov
