#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gribov/banded_matrix.hpp"
#include "gribov/bargmann.hpp"

namespace gribov {

/// Couplings of one off-diagonal entry H^{beta}_{lambda1, lambda, mu}.
struct EntryParams {
  double lambda1 = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double beta = 1.0;

  bool operator==(const EntryParams&) const = default;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Parameterization of the n x n Gribov operator matrix
///   M = diag(lambda2_j G) + ((1 - delta_ij) H^{beta_ij}_{ij}).
/// Indices are 1-based. Pairs missing from `off_entries` are the zero entry.
struct BlockSpec {
  std::size_t n = 2;
  std::vector<double> diag_couplings;
  std::map<IndexPair, EntryParams> off_entries;

  EntryParams entry(std::size_t i, std::size_t j) const;

  /// All (i, j) with i != j, row-major.
  std::vector<IndexPair> off_diagonal_pairs() const;

  bool operator==(const BlockSpec&) const = default;
};

struct Diagnostic {
  std::string field;
  std::string reason;
};

/// Admissible range of the entry exponents beta_ij. Specs and assembly use the
/// open interval; the bound and condition formulas also accept beta = 3.
enum class BetaRange { kOpen, kUpToThree };

/// Empty iff the spec satisfies every BlockSpec invariant.
std::vector<Diagnostic> validate_spec(const BlockSpec& spec,
                                      BetaRange range = BetaRange::kOpen);

/// Throws invalid-parameter carrying the first diagnostics, if any.
void require_valid(const BlockSpec& spec, BetaRange range = BetaRange::kOpen);

/// The (n*N) x (n*N) finite section of M.
BandedComplexMatrix assemble(const BlockSpec& spec, std::size_t trunc);

/// M = D + S' + H' + H0', each off-diagonal part carrying one coupling kind.
struct BlockParts {
  BandedComplexMatrix diagonal;
  BandedComplexMatrix four;       // lambda1_ij * S
  BandedComplexMatrix triple;     // i * lambda_ij * H1
  BandedComplexMatrix intercept;  // mu_ij * H0^{beta_ij}
};

BlockParts split(const BlockSpec& spec, std::size_t trunc);

/// Off-diagonal part R in exact-image form: n*(N+1) rows, n*N columns, so
/// ||R u|| is the untruncated image norm for u in the truncated space.
BandedComplexMatrix assemble_remainder_image(const BlockSpec& spec,
                                             std::size_t trunc);

/// Block-diagonal part D (square n*N).
BandedComplexMatrix assemble_diagonal(const BlockSpec& spec, std::size_t trunc);

/// The scalar parameters of off-diagonal entry (i, j) as PomeronParams
/// with lambda2 = 0.
bargmann::PomeronParams entry_pomeron(const EntryParams& e);

}  // namespace gribov
