#include "gribov/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "gribov/errors.hpp"
#include "gribov/subordination.hpp"

namespace gribov {
namespace {

constexpr double kRegionSlack = 1e-9;
constexpr double kDependentColumns = 1e-10;
constexpr double kSingularStack = 1e12;

double riesz_from_vectors(const ComplexMatrix& vectors,
                          const std::vector<std::vector<std::size_t>>& clusters) {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size();
  if (total == 0) {
    throw Error(ErrorKind::kInvalidInput, "no clusters to stack");
  }
  ComplexMatrix w(vectors.rows(), static_cast<Eigen::Index>(total));
  Eigen::Index col = 0;
  for (const auto& cluster : clusters) {
    ComplexMatrix block(vectors.rows(), static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      if (cluster[i] >= static_cast<std::size_t>(vectors.cols())) {
        throw Error(ErrorKind::kInvalidIndex, "cluster index outside the spectrum");
      }
      block.col(static_cast<Eigen::Index>(i)) = vectors.col(static_cast<Eigen::Index>(cluster[i]));
    }
    if (block.cols() > 1 && condition_number(block) > 1.0 / kDependentColumns) {
      throw Error(ErrorKind::kIllSeparatedClusters,
                  "eigenvectors of a cluster are numerically dependent");
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(block);
    const ComplexMatrix q = qr.householderQ() *
                            ComplexMatrix::Identity(block.rows(), block.cols());
    w.middleCols(col, block.cols()) = q;
    col += block.cols();
  }
  const double kappa = condition_number(w);
  if (!(kappa < kSingularStack)) {
    throw Error(ErrorKind::kIllSeparatedClusters,
                "cluster subspaces overlap numerically (kappa = " + std::to_string(kappa) + ")");
  }
  return kappa;
}

ComplexMatrix select_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

}  // namespace

void EnclosureRegion::validate() const {
  if (!(r0 >= 0.0)) throw Error(ErrorKind::kInvalidParameter, "r0 must be >= 0");
  if (!(alpha > 0.0)) throw Error(ErrorKind::kInvalidParameter, "alpha must be > 0");
  if (exponents.empty()) throw Error(ErrorKind::kInvalidParameter, "region needs exponents");
  for (double p : exponents) {
    if (!(p >= 0.0)) throw Error(ErrorKind::kInvalidParameter, "exponents must be >= 0");
  }
}

bool in_region(const EnclosureRegion& region, Complex z) {
  if (std::abs(z) <= region.r0) return true;
  for (double theta : region.rays) {
    const Complex w = std::polar(1.0, -theta) * z;
    const double x = w.real();
    if (x < 0.0) continue;
    double envelope = 0.0;
    for (double p : region.exponents) envelope = std::max(envelope, std::pow(x, p));
    if (std::abs(w.imag()) <= region.alpha * envelope) return true;
  }
  return false;
}

EnclosureRegion gribov_region(const BlockSpec& spec, double alpha_margin,
                              const SpectrumResult& spectrum, SectorExponents exponents) {
  require_valid(spec);
  if (!(alpha_margin > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "alpha_margin must be > 0");
  }
  const bool positive = spec.diag_couplings.front() > 0.0;
  for (double c : spec.diag_couplings) {
    if ((c > 0.0) != positive) {
      throw Error(ErrorKind::kUnsupportedConfiguration,
                  "magic couplings of mixed sign: ray set undetermined");
    }
  }

  EnclosureRegion region;
  region.rays = {positive ? 0.0 : std::numbers::pi};

  double bound_sum = 0.0;
  std::set<double> p_set;
  if (exponents == SectorExponents::kBetaPowers) {
    p_set.insert(2.0 / 3.0);
  } else {
    p_set.insert(0.5);
    p_set.insert(2.0 / 3.0);
  }
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryBounds b = entry_bounds(spec, i, j);
    bound_sum += b.b1 + b.b2 + b.b3;
    const double beta = spec.entry(i, j).beta;
    p_set.insert(exponents == SectorExponents::kBetaPowers ? beta : beta / 3.0);
  }
  region.exponents.assign(p_set.begin(), p_set.end());
  region.alpha = bound_sum > 0.0 ? (1.0 + alpha_margin) * bound_sum : alpha_margin;

  region.r0 = 0.0;
  double outside = -1.0;
  for (std::size_t idx : spectrum.stabilized_indices()) {
    const Complex z = spectrum.eigenvalues[idx];
    if (!in_region(region, z)) outside = std::max(outside, std::abs(z));
  }
  if (outside >= 0.0) region.r0 = outside + kRegionSlack;
  return region;
}

std::vector<CountingSample> counting_asymptotics(double lambda2, std::size_t k_max) {
  if (!(lambda2 > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "counting asymptotics need lambda2 > 0");
  }
  if (k_max < 3) {
    throw Error(ErrorKind::kInvalidParameter, "counting asymptotics need k_max >= 3");
  }
  std::vector<CountingSample> out;
  out.reserve(k_max - 2);
  for (std::size_t k = 3; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    CountingSample s;
    s.k = k;
    s.r = lambda2 * (kd - 1.0) * kd * (2.0 * kd - 1.0) / 2.0;
    s.ratio = kd / std::cbrt(s.r);
    out.push_back(s);
  }
  return out;
}

double condition_number(const ComplexMatrix& columns) {
  Eigen::BDCSVD<ComplexMatrix> svd(columns);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

double eigenbasis_condition(const ComplexMatrix& m) {
  const SpectrumResult spectrum = eigenvalues(m);
  const EigenvectorResult ev = eigenvectors(m, spectrum);
  if (ev.defective_warning) return std::numeric_limits<double>::infinity();
  return condition_number(ev.vectors);
}

double eigenbasis_condition(const BandedComplexMatrix& m) {
  return eigenbasis_condition(m.dense());
}

std::vector<std::vector<std::size_t>> cluster_parentheses(const SpectrumResult& spectrum,
                                                          double gap_factor,
                                                          double exponent) {
  if (!(gap_factor > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "gap_factor must be > 0");
  }
  std::vector<std::size_t> idx = spectrum.stabilized_indices();
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(spectrum.eigenvalues[a]) < std::abs(spectrum.eigenvalues[b]);
  });
  std::vector<std::vector<std::size_t>> clusters;
  double prev = 0.0;
  for (std::size_t i : idx) {
    const double mod = std::abs(spectrum.eigenvalues[i]);
    if (clusters.empty() || mod - prev > gap_factor * std::pow(1.0 + mod, exponent)) {
      clusters.emplace_back();
    }
    clusters.back().push_back(i);
    prev = mod;
  }
  return clusters;
}

double riesz_constant(const ComplexMatrix& m, const SpectrumResult& spectrum,
                      const std::vector<std::vector<std::size_t>>& clusters) {
  const EigenvectorResult ev = eigenvectors(m, spectrum);
  return riesz_from_vectors(ev.vectors, clusters);
}

RieszDiagnostics riesz_diagnostics(const ComplexMatrix& m, const SpectrumResult& spectrum,
                                   double gap_factor, double exponent) {
  RieszDiagnostics out;
  const EigenvectorResult ev = eigenvectors(m, spectrum);
  out.defective_warning = ev.defective_warning;
  out.clusters = cluster_parentheses(spectrum, gap_factor, exponent);
  const std::vector<std::size_t> stable = spectrum.stabilized_indices();
  if (stable.empty()) {
    throw Error(ErrorKind::kInvalidInput, "no stabilized eigenvalues to analyse");
  }
  out.eigvec_condition = condition_number(select_columns(ev.vectors, stable));
  out.projector_condition = riesz_from_vectors(ev.vectors, out.clusters);
  return out;
}

}  // namespace gribov
