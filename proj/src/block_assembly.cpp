#include "gribov/block_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gribov/errors.hpp"

namespace gribov {
namespace {

std::string pair_name(const IndexPair& ij) {
  std::ostringstream os;
  os << "off_entries(" << ij.first << "," << ij.second << ")";
  return os.str();
}

std::size_t block_bandwidth(std::size_t n, std::size_t trunc) {
  return std::min((n - 1) * trunc + 1, n * trunc - 1);
}

// Writes `block` into the (i, j) block of `out`; blocks are row_stride tall.
void place(ComplexMatrix& out, std::size_t i, std::size_t j, std::size_t row_stride,
           std::size_t trunc, const BandedComplexMatrix& block) {
  const auto r0 = static_cast<Eigen::Index>((i - 1) * row_stride);
  const auto c0 = static_cast<Eigen::Index>((j - 1) * trunc);
  out.block(r0, c0, block.dense().rows(), block.dense().cols()) += block.dense();
}

BandedComplexMatrix assemble_filtered(const BlockSpec& spec, std::size_t trunc,
                                      bool with_diagonal, bool keep_lambda1,
                                      bool keep_lambda, bool keep_mu) {
  require_valid(spec);
  if (trunc == 0) {
    throw Error(ErrorKind::kInvalidTruncation, "truncation size must be >= 1");
  }
  const std::size_t dim = spec.n * trunc;
  ComplexMatrix dense = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  if (with_diagonal) {
    const BandedComplexMatrix g = bargmann::build_g(trunc);
    for (std::size_t j = 1; j <= spec.n; ++j) {
      place(dense, j, j, trunc, trunc, spec.diag_couplings[j - 1] * g);
    }
  }
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    EntryParams e = spec.entry(i, j);
    if (!keep_lambda1) e.lambda1 = 0.0;
    if (!keep_lambda) e.lambda = 0.0;
    if (!keep_mu) e.mu = 0.0;
    if (e.lambda1 == 0.0 && e.lambda == 0.0 && e.mu == 0.0) continue;
    place(dense, i, j, trunc, trunc,
          bargmann::build_scalar_gribov(trunc, entry_pomeron(e), false));
  }
  const std::size_t bw = block_bandwidth(spec.n, trunc);
  BandedComplexMatrix out = BandedComplexMatrix::square(dim, bw, bw);
  out += BandedComplexMatrix::from_dense(dense);
  return out;
}

}  // namespace

EntryParams BlockSpec::entry(std::size_t i, std::size_t j) const {
  if (i == j || i == 0 || j == 0 || i > n || j > n) {
    throw Error(ErrorKind::kInvalidIndex, "(" + std::to_string(i) + "," +
                                              std::to_string(j) +
                                              ") is not an off-diagonal index");
  }
  auto it = off_entries.find({i, j});
  return it == off_entries.end() ? EntryParams{} : it->second;
}

std::vector<IndexPair> BlockSpec::off_diagonal_pairs() const {
  std::vector<IndexPair> out;
  out.reserve(n * (n - 1));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Diagnostic> validate_spec(const BlockSpec& spec, BetaRange range) {
  std::vector<Diagnostic> out;
  if (spec.n < 2) {
    out.push_back({"n", "n must be >= 2"});
  }
  if (spec.diag_couplings.size() != spec.n) {
    out.push_back({"diag_couplings", "expected " + std::to_string(spec.n) +
                                         " entries, got " +
                                         std::to_string(spec.diag_couplings.size())});
  }
  for (std::size_t j = 0; j < spec.diag_couplings.size(); ++j) {
    const double c = spec.diag_couplings[j];
    const std::string field = "diag_couplings[" + std::to_string(j + 1) + "]";
    if (!std::isfinite(c)) {
      out.push_back({field, "diag coupling not finite"});
    } else if (c == 0.0) {
      out.push_back({field, "diag coupling zero"});
    }
  }
  for (const auto& [ij, e] : spec.off_entries) {
    const std::string field = pair_name(ij);
    if (ij.first == ij.second || ij.first < 1 || ij.second < 1 ||
        ij.first > spec.n || ij.second > spec.n) {
      out.push_back({field, "index pair not in the off-diagonal set"});
      continue;
    }
    if (!std::isfinite(e.lambda1) || !std::isfinite(e.lambda) ||
        !std::isfinite(e.mu) || !std::isfinite(e.beta)) {
      out.push_back({field, "coupling not finite"});
    }
    const bool beta_ok =
        e.beta > 0.0 && (e.beta < 3.0 || (range == BetaRange::kUpToThree && e.beta == 3.0));
    if (!beta_ok) {
      out.push_back({field, range == BetaRange::kOpen ? "beta out of (0,3)" : "beta out of (0,3]"});
    }
  }
  return out;
}

void require_valid(const BlockSpec& spec, BetaRange range) {
  const auto diags = validate_spec(spec, range);
  if (diags.empty()) return;
  std::ostringstream os;
  os << "invalid block spec:";
  for (const auto& d : diags) os << " [" << d.field << ": " << d.reason << "]";
  throw Error(ErrorKind::kInvalidParameter, os.str());
}

bargmann::PomeronParams entry_pomeron(const EntryParams& e) {
  bargmann::PomeronParams p;
  p.lambda2 = 0.0;
  p.lambda1 = e.lambda1;
  p.lambda = e.lambda;
  p.mu = e.mu;
  p.beta = e.beta;
  return p;
}

BandedComplexMatrix assemble(const BlockSpec& spec, std::size_t trunc) {
  return assemble_filtered(spec, trunc, true, true, true, true);
}

BlockParts split(const BlockSpec& spec, std::size_t trunc) {
  return BlockParts{
      assemble_filtered(spec, trunc, true, false, false, false),
      assemble_filtered(spec, trunc, false, true, false, false),
      assemble_filtered(spec, trunc, false, false, true, false),
      assemble_filtered(spec, trunc, false, false, false, true),
  };
}

BandedComplexMatrix assemble_diagonal(const BlockSpec& spec, std::size_t trunc) {
  return assemble_filtered(spec, trunc, true, false, false, false);
}

BandedComplexMatrix assemble_remainder_image(const BlockSpec& spec,
                                             std::size_t trunc) {
  require_valid(spec);
  if (trunc == 0) {
    throw Error(ErrorKind::kInvalidTruncation, "truncation size must be >= 1");
  }
  const std::size_t rows = spec.n * (trunc + 1);
  const std::size_t cols = spec.n * trunc;
  ComplexMatrix dense = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryParams e = spec.entry(i, j);
    if (e.lambda1 == 0.0 && e.lambda == 0.0 && e.mu == 0.0) continue;
    place(dense, i, j, trunc + 1, trunc,
          bargmann::build_scalar_gribov(trunc, entry_pomeron(e), true));
  }
  return BandedComplexMatrix::from_dense(dense);
}

}  // namespace gribov
