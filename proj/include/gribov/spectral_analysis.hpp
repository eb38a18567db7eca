#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "gribov/banded_matrix.hpp"
#include "gribov/block_assembly.hpp"
#include "gribov/eigensolver.hpp"

namespace gribov {

/// Ball of radius r0 around the origin, united with sectors around rays:
///   { e^{i theta} (x + i y) : x >= 0, |y| <= alpha * max_k x^{p_k} }.
struct EnclosureRegion {
  double r0 = 0.0;
  std::vector<double> rays;       // angles in [0, 2pi)
  double alpha = 1.0;
  std::vector<double> exponents;  // nonnegative

  void validate() const;
};

bool in_region(const EnclosureRegion& region, Complex z);

/// Which exponent set the sector law uses for a block spec.
enum class SectorExponents {
  /// {2/3} together with every beta_ij.
  kBetaPowers,
  /// {beta_ij / 3} together with {1/2, 2/3}, the merged certificate's exponents.
  kCertificate,
};

/// Enclosure for the assembled Gribov matrix. Rays are {0} for positive
/// magic couplings, {pi} for negative ones; alpha = (1 + alpha_margin) times
/// the sum of all b1 + b2 + b3 (alpha_margin itself when that sum is zero);
/// r0 is the smallest radius that, with 1e-9 slack, captures every stabilized
/// eigenvalue outside the sector.
/// Throws unsupported-configuration when the magic couplings differ in sign.
EnclosureRegion gribov_region(const BlockSpec& spec, double alpha_margin,
                              const SpectrumResult& spectrum,
                              SectorExponents exponents = SectorExponents::kBetaPowers);

struct CountingSample {
  std::size_t k = 0;
  double r = 0.0;      // midpoint between the k-th and (k+1)-th eigenvalue of lambda2 G
  double ratio = 0.0;  // k / r^{1/3}
};

/// Samples k = 3..k_max of N(r_k, lambda2 G) / r_k^{1/3}, which tends to
/// lambda2^{-1/3}.
std::vector<CountingSample> counting_asymptotics(double lambda2, std::size_t k_max);

/// 2-norm condition number of a matrix with linearly independent columns;
/// infinity when the smallest singular value vanishes.
double condition_number(const ComplexMatrix& columns);

/// kappa_2 of the unit-column eigenvector matrix. Infinity when inverse
/// iteration reports a defective cluster.
double eigenbasis_condition(const ComplexMatrix& m);
double eigenbasis_condition(const BandedComplexMatrix& m);

/// Groups the stabilized eigenvalues, sorted by modulus, into contiguous
/// clusters; a new cluster starts where the modulus gap exceeds
/// gap_factor * (1 + |lambda|)^exponent. Returns spectrum indices.
std::vector<std::vector<std::size_t>> cluster_parentheses(const SpectrumResult& spectrum,
                                                          double gap_factor,
                                                          double exponent);

/// kappa_2 of W, the column-wise stack of orthonormal bases of each cluster's
/// eigenvector span. Throws ill-separated-clusters when a cluster's vectors
/// are numerically dependent or the stacked basis is numerically singular.
double riesz_constant(const ComplexMatrix& m, const SpectrumResult& spectrum,
                      const std::vector<std::vector<std::size_t>>& clusters);

struct RieszDiagnostics {
  double eigvec_condition = 1.0;
  std::vector<std::vector<std::size_t>> clusters;
  double projector_condition = 1.0;
  bool defective_warning = false;
};

/// Condition numbers restricted to the stabilized eigenvalues of `spectrum`
/// (which must come from m), clustered by cluster_parentheses.
RieszDiagnostics riesz_diagnostics(const ComplexMatrix& m, const SpectrumResult& spectrum,
                                   double gap_factor, double exponent);

}  // namespace gribov
