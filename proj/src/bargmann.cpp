#include "gribov/bargmann.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "gribov/errors.hpp"

namespace gribov::bargmann {
namespace {

void require_truncation(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorKind::kInvalidTruncation, "truncation size must be >= 1");
  }
}

BandedComplexMatrix diagonal(std::size_t n, bool exact_image,
                             const std::function<double(double)>& eigenvalue) {
  require_truncation(n);
  BandedComplexMatrix m(exact_image ? n + 1 : n, n, exact_image ? 1 : 0, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    m.set(k, k, eigenvalue(static_cast<double>(k)));
  }
  return m;
}

}  // namespace

void PomeronParams::validate() const {
  if (lambda2 == 0.0) {
    throw Error(ErrorKind::kInvalidParameter, "lambda2 (magic coupling) must be nonzero");
  }
  if (!(beta > 0.0 && beta < 3.0)) {
    throw Error(ErrorKind::kInvalidParameter,
                "beta must lie in (0,3), got " + std::to_string(beta));
  }
}

BandedComplexMatrix build_h0(std::size_t n) {
  return diagonal(n, false, [](double k) { return k; });
}

BandedComplexMatrix build_h0_beta(std::size_t n, double beta) {
  if (!(beta > 0.0 && beta <= 3.0)) {
    throw Error(ErrorKind::kInvalidParameter,
                "H0^beta needs 0 < beta <= 3, got " + std::to_string(beta));
  }
  return diagonal(n, false, [beta](double k) { return std::pow(k, beta); });
}

BandedComplexMatrix build_s(std::size_t n) {
  return diagonal(n, false, [](double k) { return k * (k - 1.0); });
}

BandedComplexMatrix build_g(std::size_t n) {
  return diagonal(n, false, [](double k) { return (k - 2.0) * (k - 1.0) * k; });
}

BandedComplexMatrix build_h1(std::size_t n, bool exact_image) {
  require_truncation(n);
  BandedComplexMatrix m(exact_image ? n + 1 : n, n, 1, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    // A*A*A e_k = k sqrt(k+1) e_{k+1};  A*AA e_k = (k-1) sqrt(k) e_{k-1}.
    if (k + 1 <= m.rows()) m.set(k + 1, k, kd * std::sqrt(kd + 1.0));
    if (k >= 2) m.set(k - 1, k, (kd - 1.0) * std::sqrt(kd));
  }
  return m;
}

BandedComplexMatrix build_scalar_gribov(std::size_t n, const PomeronParams& p,
                                        bool exact_image) {
  require_truncation(n);
  if (!(p.beta > 0.0 && p.beta < 3.0)) {
    throw Error(ErrorKind::kInvalidParameter,
                "beta must lie in (0,3), got " + std::to_string(p.beta));
  }
  const double beta = p.beta;
  BandedComplexMatrix out = diagonal(n, exact_image, [&](double k) {
    return p.lambda2 * (k - 2.0) * (k - 1.0) * k + p.lambda1 * k * (k - 1.0) +
           p.mu * std::pow(k, beta);
  });
  if (p.lambda != 0.0) {
    out += Complex(0.0, p.lambda) * build_h1(n, exact_image);
  } else {
    // Keep the tridiagonal band metadata regardless of which couplings vanish.
    out += BandedComplexMatrix(out.rows(), n, 1, 1);
  }
  return out;
}

}  // namespace gribov::bargmann
