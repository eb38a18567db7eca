#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gribov/banded_matrix.hpp"
#include "gribov/block_assembly.hpp"

namespace gribov {

/// Constants of the ladder-operator inequalities
///   ||H0^3 u|| <= c1 ||G u|| + c2 ||u||,   ||H1 u|| <= c3 ||H0^{3/2} u||.
namespace constants {
inline constexpr double c1 = 5.0;
inline const double c2 = std::sqrt(1.0 + 64.0);
inline const double c3 = 1.0 + 2.0 * std::sqrt(2.0);
}  // namespace constants

/// One term b * ||S u||^p * ||u||^(1-p) of a generalized-subordination bound.
struct CertificateTerm {
  double p = 0.0;
  double b = 0.0;

  bool operator==(const CertificateTerm&) const = default;
};

/// ||T u|| <= sum_k b_k ||S u||^{p_k} ||u||^{1-p_k} for all u in the domain of S.
struct SubordinationCertificate {
  std::vector<CertificateTerm> terms;

  /// Throws invalid-input on an empty term list, p outside [0,1] or b < 0.
  void validate() const;

  double bound_sum() const;
  double max_exponent() const;

  /// Right-hand side for given norms; uses 0^0 = 1.
  double evaluate(double s_norm, double u_norm) const;

  bool operator==(const SubordinationCertificate&) const = default;
};

struct EntryBounds {
  double b1 = 0.0;  // intercept term, exponent beta_ij / 3
  double b2 = 0.0;  // triple coupling term, exponent 1/2
  double b3 = 0.0;  // four coupling term, exponent 2/3
};

/// Bounds of entry (i, j) relative to lambda2_j G. Throws invalid-index when
/// i == j.
EntryBounds entry_bounds(const BlockSpec& spec, std::size_t i, std::size_t j);

/// Multiset union of all per-entry terms, in map order. Throws invalid-input
/// on an empty map.
SubordinationCertificate merge_certificates(
    const std::map<IndexPair, SubordinationCertificate>& per_entry);

/// Per-entry certificates of the off-diagonal part relative to the diagonal.
/// With `include_constant_terms` each entry also gets the p = 0 remainder
///   |mu| c2^{beta/3} + |lambda| c3 c2^{1/2} + |lambda1| c2^{2/3}.
std::map<IndexPair, SubordinationCertificate> gribov_entry_certificates(
    const BlockSpec& spec, bool include_constant_terms);

SubordinationCertificate gribov_certificate(const BlockSpec& spec,
                                            bool include_constant_terms);

struct VerificationReport {
  std::size_t vectors_checked = 0;
  double min_slack = 0.0;
  double min_relative_slack = 0.0;  // slack / max(rhs, ||Tu||) at its own argmin
  std::size_t argmin_index = 0;
  ComplexVector argmin_vector;
  double tolerance = 0.0;
  bool pass = false;
};

/// Evaluates slack(u) = sum_k b_k ||S u||^{p_k} ||u||^{1-p_k} - ||T u|| over the
/// columns of `trial_vectors`. Passes iff min slack >= -1e-10 * scale, scale
/// being the largest right-hand side seen (at least 1).
VerificationReport verify_subordination(const BandedComplexMatrix& t_image,
                                        const BandedComplexMatrix& s_image,
                                        const SubordinationCertificate& cert,
                                        const ComplexMatrix& trial_vectors);

/// Identity columns e_1..e_dim.
ComplexMatrix basis_trial_vectors(std::size_t dim);
/// Unit vectors with i.i.d. complex Gaussian entries, deterministic in seed.
ComplexMatrix random_trial_vectors(std::size_t dim, std::size_t count,
                                   std::uint64_t seed);

struct ConditionValue {
  double value = 0.0;
  bool satisfied = false;
};

/// sum over off-diagonal pairs of (beta b1 / 3 + b2 / 2 + 2 b3 / 3); closedness
/// holds when the sum is below 1.
ConditionValue closedness_margin(const BlockSpec& spec);

struct SelfAdjointCheck {
  bool applicable = false;  // every lambda_ij vanishes
  double value = 0.0;       // sum of (beta b1 / 3 + 2 b3 / 3)
  bool satisfied = false;   // applicable && value < 1
  /// (i,j) and (j,i) carry identical lambda1, mu and beta, so the assembled
  /// matrix is real symmetric when applicable.
  bool symmetric_blocks = false;
};

SelfAdjointCheck selfadjointness_check(const BlockSpec& spec);

/// Example family with p_12 = p_21 = 1/3 and p_ij = a^{-(i+j)} otherwise,
/// intercept couplings mu_ij = p_ij, beta_ij = 3 p_ij and a common lambda2.
struct ExampleP6Result {
  double gamma = 0.0;          // c1 / |lambda2|
  double condition_sum = 0.0;  // sum over off-diagonal pairs gamma^p p^2
  double s = 0.0;              // sum_{2 <= i < j <= n} p_ij^2
  double s_bound = 0.0;        // 1 / (a^4 (a^4 - 1)(a^2 - 1))
  bool satisfied = false;      // condition_sum < 1
  bool hypotheses_met = false; // a >= 7/5 and gamma < 1
  std::vector<std::string> warnings;
};

double example_p6_exponent(std::size_t i, std::size_t j, double a);

ExampleP6Result example_p6(std::size_t n, double a, double lambda2);

/// The example as a BlockSpec, for running the general pipeline on it.
BlockSpec example_p6_spec(std::size_t n, double a, double lambda2);

}  // namespace gribov
