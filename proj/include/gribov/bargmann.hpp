#pragma once

#include <cstddef>

#include "gribov/banded_matrix.hpp"

/// Finite sections of the Bargmann-space ladder-operator compositions in the
/// orthonormal basis e_k = z^k / sqrt(k!), k = 1..N. The constant function
/// e_0 is excluded from the space.
namespace gribov::bargmann {

/// Pomeron couplings of the scalar Gribov operator
///   lambda2 * G + lambda1 * S + mu * H0^beta + i * lambda * H1.
struct PomeronParams {
  double lambda2 = 1.0;  // magic coupling
  double lambda1 = 0.0;  // four coupling
  double mu = 0.0;       // intercept
  double lambda = 0.0;   // triple coupling
  double beta = 1.0;

  /// Throws invalid-parameter unless lambda2 != 0 and 0 < beta < 3.
  void validate() const;
};

/// H0 = A*A, diag(k).
BandedComplexMatrix build_h0(std::size_t n);

/// H0^beta = diag(k^beta) for 0 < beta <= 3.
BandedComplexMatrix build_h0_beta(std::size_t n, double beta);

/// S = A*^2 A^2, diag(k(k-1)).
BandedComplexMatrix build_s(std::size_t n);

/// G = A*^3 A^3, diag((k-2)(k-1)k).
BandedComplexMatrix build_g(std::size_t n);

/// H1 = A*(A* + A)A. Column k carries k*sqrt(k+1) at row k+1 and
/// (k-1)*sqrt(k) at row k-1. With `exact_image` the result is (N+1) x N so
/// that every column norm equals the untruncated ||H1 e_k||.
BandedComplexMatrix build_h1(std::size_t n, bool exact_image);

/// lambda2*G + lambda1*S + mu*H0^beta + i*lambda*H1. lambda2 = 0 is allowed
/// and yields the pure off-diagonal perturbation. Diagonal terms are padded
/// with a zero row when `exact_image` is set.
BandedComplexMatrix build_scalar_gribov(std::size_t n, const PomeronParams& p,
                                        bool exact_image);

}  // namespace gribov::bargmann
