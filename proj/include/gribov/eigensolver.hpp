#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gribov/banded_matrix.hpp"

namespace gribov {

/// Eigenvalues of a finite section, sorted by (modulus, phase in [0, 2pi)).
struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  /// Backward-error bound: sum of the subdiagonal magnitudes neglected at
  /// deflation, relative to ||M||_F.
  double residual_bound = 0.0;
  /// Per-eigenvalue truncation-stability flag. A plain eigenvalue solve marks
  /// everything stable; stabilized_spectrum() refines the flags.
  std::vector<bool> stabilized;
  std::size_t iterations = 0;
  bool hermitian = false;
  /// Truncation size of the comparison spectrum, 0 when none was computed.
  std::size_t reference_trunc = 0;

  std::size_t size() const { return eigenvalues.size(); }
  std::vector<std::size_t> stabilized_indices() const;
};

/// Q* M Q = H, H upper Hessenberg, Q unitary (Householder reflections).
/// Columns whose subcolumn below the first subdiagonal is already zero are
/// left untouched, so tridiagonal and diagonal inputs come back unchanged.
struct HessenbergForm {
  ComplexMatrix h;
  ComplexMatrix q;
};

HessenbergForm hessenberg(const ComplexMatrix& m);
HessenbergForm hessenberg(const BandedComplexMatrix& m);

/// Single-shift complex QR with Wilkinson shifts and deflation on the
/// Hessenberg form. Hermitian input (||M - M*||_F <= 1e-13 ||M||_F) goes
/// through a real symmetric tridiagonal QR and returns real eigenvalues.
/// Throws IterationLimitError after 30 * dim sweeps.
SpectrumResult eigenvalues(const ComplexMatrix& m);
SpectrumResult eigenvalues(const BandedComplexMatrix& m);

struct EigenvectorResult {
  ComplexMatrix vectors;  // unit columns, aligned with the spectrum order
  double residual_bound = 0.0;  // max_j ||M v_j - lambda_j v_j|| / ||M||_F
  bool defective_warning = false;
  std::vector<std::size_t> stagnated;  // indices where inverse iteration stalled
};

/// Inverse iteration on the Hessenberg form, shifted by each computed
/// eigenvalue. Start vectors inside a numerical cluster are orthogonalized
/// against the cluster's earlier vectors (and, for Hermitian input, kept
/// orthogonal through every step).
EigenvectorResult eigenvectors(const ComplexMatrix& m, const SpectrumResult& spectrum);
EigenvectorResult eigenvectors(const BandedComplexMatrix& m,
                               const SpectrumResult& spectrum);

/// #{lambda : |lambda| <= r}, with multiplicity.
std::size_t counting(const SpectrumResult& spectrum, double r);

using MatrixBuilder = std::function<BandedComplexMatrix(std::size_t)>;

/// Spectrum at truncation `trunc`, flagged against the spectrum at
/// ceil(growth * trunc): an eigenvalue is stabilized iff the larger section has
/// an eigenvalue within rel_tol * (1 + |lambda|).
SpectrumResult stabilized_spectrum(const MatrixBuilder& build, std::size_t trunc,
                                   double growth, double rel_tol);

/// Sort key used for every spectrum: modulus, then phase in [0, 2pi).
bool spectral_order(const Complex& a, const Complex& b);

}  // namespace gribov
