#include "gribov/subordination.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "gribov/errors.hpp"
#include "gribov/parallel.hpp"

namespace gribov {
namespace {

// x^p with 0^0 = 1.
double pow0(double x, double p) { return p == 0.0 ? 1.0 : std::pow(x, p); }

}  // namespace

void SubordinationCertificate::validate() const {
  if (terms.empty()) {
    throw Error(ErrorKind::kInvalidInput, "certificate has no terms");
  }
  for (const auto& t : terms) {
    if (!(t.p >= 0.0 && t.p <= 1.0)) {
      throw Error(ErrorKind::kInvalidInput,
                  "certificate exponent outside [0,1]: " + std::to_string(t.p));
    }
    if (!(t.b >= 0.0) || !std::isfinite(t.b)) {
      throw Error(ErrorKind::kInvalidInput,
                  "certificate bound must be finite and >= 0: " + std::to_string(t.b));
    }
  }
}

double SubordinationCertificate::bound_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.b;
  return s;
}

double SubordinationCertificate::max_exponent() const {
  double p = 0.0;
  for (const auto& t : terms) p = std::max(p, t.p);
  return p;
}

double SubordinationCertificate::evaluate(double s_norm, double u_norm) const {
  double rhs = 0.0;
  for (const auto& t : terms) {
    if (t.b == 0.0) continue;
    rhs += t.b * pow0(s_norm, t.p) * pow0(u_norm, 1.0 - t.p);
  }
  return rhs;
}

EntryBounds entry_bounds(const BlockSpec& spec, std::size_t i, std::size_t j) {
  const EntryParams e = spec.entry(i, j);
  const double lam2 = std::abs(spec.diag_couplings.at(j - 1));
  const double c1 = constants::c1;
  EntryBounds b;
  b.b1 = std::abs(e.mu) * std::pow(c1 / lam2, e.beta / 3.0);
  b.b2 = std::abs(e.lambda) * constants::c3 * std::sqrt(c1 / lam2);
  b.b3 = std::abs(e.lambda1) * std::pow(c1 / lam2, 2.0 / 3.0);
  return b;
}

SubordinationCertificate merge_certificates(
    const std::map<IndexPair, SubordinationCertificate>& per_entry) {
  if (per_entry.empty()) {
    throw Error(ErrorKind::kInvalidInput, "no certificates to merge");
  }
  SubordinationCertificate merged;
  for (const auto& [ij, cert] : per_entry) {
    merged.terms.insert(merged.terms.end(), cert.terms.begin(), cert.terms.end());
  }
  return merged;
}

std::map<IndexPair, SubordinationCertificate> gribov_entry_certificates(
    const BlockSpec& spec, bool include_constant_terms) {
  require_valid(spec, BetaRange::kUpToThree);
  std::map<IndexPair, SubordinationCertificate> out;
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryParams e = spec.entry(i, j);
    const EntryBounds b = entry_bounds(spec, i, j);
    SubordinationCertificate cert;
    cert.terms = {{e.beta / 3.0, b.b1}, {0.5, b.b2}, {2.0 / 3.0, b.b3}};
    if (include_constant_terms) {
      const double c2 = constants::c2;
      const double remainder = std::abs(e.mu) * std::pow(c2, e.beta / 3.0) +
                               std::abs(e.lambda) * constants::c3 * std::sqrt(c2) +
                               std::abs(e.lambda1) * std::pow(c2, 2.0 / 3.0);
      cert.terms.push_back({0.0, remainder});
    }
    out.emplace(IndexPair{i, j}, std::move(cert));
  }
  return out;
}

SubordinationCertificate gribov_certificate(const BlockSpec& spec,
                                            bool include_constant_terms) {
  return merge_certificates(gribov_entry_certificates(spec, include_constant_terms));
}

VerificationReport verify_subordination(const BandedComplexMatrix& t_image,
                                        const BandedComplexMatrix& s_image,
                                        const SubordinationCertificate& cert,
                                        const ComplexMatrix& trial_vectors) {
  cert.validate();
  if (t_image.cols() != s_image.cols()) {
    throw Error(ErrorKind::kInvalidInput, "T and S images need equal column counts");
  }
  if (static_cast<std::size_t>(trial_vectors.rows()) != t_image.cols()) {
    throw Error(ErrorKind::kInvalidInput, "trial vector dimension mismatch");
  }
  const auto count = static_cast<std::size_t>(trial_vectors.cols());
  if (count == 0) {
    throw Error(ErrorKind::kInvalidInput, "no trial vectors");
  }

  const ComplexMatrix t_img = t_image.dense() * trial_vectors;
  const ComplexMatrix s_img = s_image.dense() * trial_vectors;

  std::vector<double> slack(count);
  std::vector<double> rhs(count);
  std::vector<double> lhs(count);
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const auto c = static_cast<Eigen::Index>(v);
      lhs[v] = t_img.col(c).norm();
      rhs[v] = cert.evaluate(s_img.col(c).norm(), trial_vectors.col(c).norm());
      slack[v] = rhs[v] - lhs[v];
    }
  });

  VerificationReport report;
  report.vectors_checked = count;
  const auto it = std::min_element(slack.begin(), slack.end());
  report.argmin_index = static_cast<std::size_t>(it - slack.begin());
  report.min_slack = *it;
  report.argmin_vector = trial_vectors.col(static_cast<Eigen::Index>(report.argmin_index));

  double scale = 1.0;
  double min_rel = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < count; ++v) {
    scale = std::max(scale, rhs[v]);
    const double denom = std::max({rhs[v], lhs[v], std::numeric_limits<double>::min()});
    min_rel = std::min(min_rel, slack[v] / denom);
  }
  report.min_relative_slack = min_rel;
  report.tolerance = 1e-10 * scale;
  report.pass = report.min_slack >= -report.tolerance;
  return report;
}

ComplexMatrix basis_trial_vectors(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix random_trial_vectors(std::size_t dim, std::size_t count,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      const double re = normal(rng);
      out(r, c) = Complex(re, normal(rng));
    }
    out.col(c).normalize();
  }
  return out;
}

ConditionValue closedness_margin(const BlockSpec& spec) {
  require_valid(spec, BetaRange::kUpToThree);
  ConditionValue out;
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryBounds b = entry_bounds(spec, i, j);
    out.value += b.b1 * spec.entry(i, j).beta / 3.0 + b.b2 / 2.0 + 2.0 * b.b3 / 3.0;
  }
  out.satisfied = out.value < 1.0;
  return out;
}

SelfAdjointCheck selfadjointness_check(const BlockSpec& spec) {
  require_valid(spec, BetaRange::kUpToThree);
  SelfAdjointCheck out;
  out.applicable = true;
  out.symmetric_blocks = true;
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryParams e = spec.entry(i, j);
    const EntryParams t = spec.entry(j, i);
    if (e.lambda != 0.0) out.applicable = false;
    const bool beta_matters = e.mu != 0.0 || t.mu != 0.0;
    if (e.lambda1 != t.lambda1 || e.mu != t.mu || (beta_matters && e.beta != t.beta)) {
      out.symmetric_blocks = false;
    }
    const EntryBounds b = entry_bounds(spec, i, j);
    out.value += b.b1 * e.beta / 3.0 + 2.0 * b.b3 / 3.0;
  }
  out.satisfied = out.applicable && out.value < 1.0;
  return out;
}

double example_p6_exponent(std::size_t i, std::size_t j, double a) {
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) return 1.0 / 3.0;
  return std::pow(a, -static_cast<double>(i + j));
}

ExampleP6Result example_p6(std::size_t n, double a, double lambda2) {
  if (n < 2) throw Error(ErrorKind::kInvalidParameter, "example needs n >= 2");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::kInvalidParameter, "example needs a > 0");
  }
  if (lambda2 == 0.0 || !std::isfinite(lambda2)) {
    throw Error(ErrorKind::kInvalidParameter, "example needs lambda2 != 0");
  }
  ExampleP6Result out;
  out.gamma = constants::c1 / std::abs(lambda2);

  // Twice the sum over i < j.
  double half = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double p = example_p6_exponent(i, j, a);
      half += std::pow(out.gamma, p) * p * p;
    }
  }
  out.condition_sum = 2.0 * half;

  // S = sum_{i=2}^{n-1} S_i / a^{2i},  S_i = sum_{j=i+1}^{n} a^{-2j} (geometric).
  const double q = 1.0 / (a * a);
  for (std::size_t i = 2; i + 1 <= n; ++i) {
    const double si =
        q == 1.0 ? static_cast<double>(n - i)
                 : std::pow(q, static_cast<double>(i + 1)) *
                       (1.0 - std::pow(q, static_cast<double>(n - i))) / (1.0 - q);
    out.s += si * std::pow(q, static_cast<double>(i));
  }
  const double a2 = a * a;
  const double a4 = a2 * a2;
  out.s_bound = a > 1.0 ? 1.0 / (a4 * (a4 - 1.0) * (a2 - 1.0))
                        : std::numeric_limits<double>::infinity();

  out.satisfied = out.condition_sum < 1.0;
  const bool a_ok = a >= 7.0 / 5.0;
  const bool gamma_ok = out.gamma < 1.0;
  if (!a_ok) out.warnings.push_back("a < 7/5: hypothesis on the decay rate not met");
  if (!gamma_ok) out.warnings.push_back("gamma = c1/|lambda2| >= 1: hypothesis not met");
  out.hypotheses_met = a_ok && gamma_ok;
  return out;
}

BlockSpec example_p6_spec(std::size_t n, double a, double lambda2) {
  BlockSpec spec;
  spec.n = n;
  spec.diag_couplings.assign(n, lambda2);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double p = example_p6_exponent(i, j, a);
      spec.off_entries[{i, j}] = EntryParams{0.0, 0.0, p, 3.0 * p};
    }
  }
  return spec;
}

}  // namespace gribov
