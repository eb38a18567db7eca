// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gribov/bargmann.hpp"
#include "gribov/block_assembly.hpp"
#include "gribov/eigensolver.hpp"
#include "gribov/spectral_analysis.hpp"
#include "gribov/subordination.hpp"
#include "oracles.hpp"

using namespace gribov;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Verdict diagonal_exactness() {
  const std::size_t n = 200;
  const std::function<double(double)> formulas[] = {
      [](double k) { return k; },
      [](double k) { return k * (k - 1); },
      [](double k) { return (k - 2) * (k - 1) * k; }};
  const BandedComplexMatrix mats[] = {bargmann::build_h0(n), bargmann::build_s(n), bargmann::build_g(n)};
  std::size_t mismatches = 0;
  for (int op = 0; op < 3; ++op) {
    const auto got = eigenvalues(mats[op]).eigenvalues;
    std::vector<double> expected;
    for (std::size_t k = 1; k <= n; ++k) expected.push_back(formulas[op](double(k)));
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < n; ++i) mismatches += got[i] != Complex(expected[i], 0.0);
  }
  return {mismatches == 0, fmt("N=200, H0/S/G eigenvalue mismatches = %g (tolerance 0)", double(mismatches))};
}

Verdict h1_oracle() {
  const int n = 50;
  const Eigen::MatrixXd ref = oracle::h1_monomial(n);
  const ComplexMatrix exact = bargmann::build_h1(n, true).dense();
  const ComplexMatrix sq = bargmann::build_h1(n, false).dense();
  double abs_err = 0.0;
  double rel_err = 0.0;
  for (int r = 0; r <= n; ++r)
    for (int c = 0; c < n; ++c) {
      const double d = std::abs(exact(r, c) - ref(r, c));
      abs_err = std::max(abs_err, d);
      rel_err = std::max(rel_err, d / std::max(1.0, std::abs(ref(r, c))));
    }
  const bool symmetric = sq == sq.transpose();
  return {rel_err <= 1e-14 && symmetric,
          fmt("N=50, max elementwise error vs monomial oracle = %.3g (relative %.3g, bound 1e-14), "
              "square section symmetric = %g",
              abs_err, rel_err, symmetric ? 1.0 : 0.0)};
}

Verdict ladder_inequalities() {
  double min_scalar = INFINITY;
  long argmin = 0;
  for (long k = 1; k <= 10000; ++k) {
    const double kd = double(k);
    const double slack = 5.0 * (kd - 2) * (kd - 1) * kd + std::sqrt(65.0) - kd * kd * kd;
    if (slack < min_scalar) {
      min_scalar = slack;
      argmin = k;
    }
  }
  const std::size_t n = 200;
  const ComplexMatrix trial = hcat(basis_trial_vectors(n), random_trial_vectors(n, 1000, 31));
  const auto h03 = bargmann::build_h0_beta(n, 3.0);
  const auto i = verify_subordination(h03, bargmann::build_g(n),
                                      {{{1.0, constants::c1}, {0.0, constants::c2}}}, trial);
  bool ii_pass = true;
  double ii_min = INFINITY;
  for (double beta : {0.3, 1.0, 1.5, 2.2, 2.9}) {
    const auto r = verify_subordination(bargmann::build_h0_beta(n, beta), h03, {{{beta / 3.0, 1.0}}}, trial);
    ii_pass = ii_pass && r.pass && r.min_slack >= -1e-10;
    ii_min = std::min(ii_min, r.min_slack);
  }
  const auto iii = verify_subordination(bargmann::build_s(n), h03, {{{2.0 / 3.0, 1.0}}}, trial);
  const bool pass = argmin == 2 && std::abs(min_scalar - 0.0623) < 5e-5 && min_scalar >= 0.0 &&
                    i.pass && i.min_slack >= -1e-10 && ii_pass && iii.pass && iii.min_slack >= -1e-10;
  return {pass, fmt("scalar sweep k<=1e4: min slack %.6f at k=%g; N=200 basis+1000 random: "
                    "(i) min slack %.4g, (ii) %.3g, (iii) %.3g (bound -1e-10)",
                    min_scalar, double(argmin), i.min_slack, std::min(ii_min, iii.min_slack))};
}

Verdict self_adjoint_regime() {
  BlockSpec spec{2, {2.0, 2.0}, {}};
  spec.off_entries[{1, 2}] = {0.1, 0.0, 0.2, 1.5};
  spec.off_entries[{2, 1}] = {0.1, 0.0, 0.2, 1.5};
  const auto check = selfadjointness_check(spec);
  const auto m = assemble(spec, 60);
  const bool hermitian = m.is_hermitian(0.0);
  const auto s = eigenvalues(m);
  double max_im = 0.0;
  for (Complex z : s.eigenvalues) max_im = std::max(max_im, std::abs(z.imag()));
  const double kappa = eigenbasis_condition(m);
  const bool pass = check.applicable && check.satisfied && check.symmetric_blocks && hermitian &&
                    max_im <= 1e-10 && kappa <= 1.0 + 1e-6;
  return {pass, fmt("condition value %.4f < 1, Hermitian = %g, max |Im| = %.3g (bound 1e-10), "
                    "eigenbasis condition - 1 = %.3g (bound 1e-6)",
                    check.value, hermitian ? 1.0 : 0.0, max_im, kappa - 1.0)};
}

Verdict non_normal_enclosure() {
  BlockSpec spec{2, {1.0, 1.0}, {}};
  spec.off_entries[{1, 2}] = {0.0, 0.5, 0.0, 1.0};
  spec.off_entries[{2, 1}] = {0.0, 0.5, 0.0, 1.0};
  const MatrixBuilder build = [spec](std::size_t n) { return assemble(spec, n); };
  double membership[2];
  double r0[2][2];
  std::size_t stable[2];
  const std::size_t truncs[2] = {60, 120};
  for (int t = 0; t < 2; ++t) {
    const auto s = stabilized_spectrum(build, truncs[t], 2.0, 1e-6);
    const auto region = gribov_region(spec, 0.1, s);
    r0[t][0] = region.r0;
    r0[t][1] = gribov_region(spec, 0.1, s, SectorExponents::kCertificate).r0;
    std::size_t inside = 0;
    const auto idx = s.stabilized_indices();
    for (std::size_t i : idx) inside += in_region(region, s.eigenvalues[i]);
    stable[t] = idx.size();
    membership[t] = idx.empty() ? 0.0 : double(inside) / double(idx.size());
  }
  const auto change = [](double a, double b) {
    const double scale = std::max(a, b);
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
  };
  const double ch = change(r0[0][0], r0[1][0]);
  const bool pass = membership[0] == 1.0 && membership[1] == 1.0 && ch <= 0.05 && stable[0] > 0;
  return {pass, fmt("membership N=60: %.0f%%, N=120: %.0f%%; r0 = %.4g -> %.4g (relative change bound 5%%)",
                    100 * membership[0], 100 * membership[1], r0[0][0], r0[1][0]) +
                    fmt("; certificate-exponent r0 = %.4g -> %.4g", r0[0][1], r0[1][1])};
}

Verdict counting_asymptotics_check() {
  bool pass = true;
  std::string detail;
  for (double lam : {1.0, 8.0}) {
    const auto samples = counting_asymptotics(lam, 200);
    const double limit = 1.0 / std::cbrt(lam);
    const double err = std::abs(samples.back().ratio - limit) / limit;
    const auto spectrum = eigenvalues(lam * bargmann::build_g(200));
    std::size_t bad = 0;
    for (const auto& s : samples)
      if (s.k <= 150 && counting(spectrum, s.r) != s.k) ++bad;
    pass = pass && err <= 0.01 && bad == 0;
    detail += fmt("lambda''=%g: relative error at k=200 %.4g (bound 0.01), count mismatches k<=150: %g; ",
                  lam, err, double(bad));
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

Verdict example_family() {
  const double lam2 = 10.0 * constants::c1 / 9.0;
  const auto res = example_p6(10, 1.4, lam2);
  const auto ref = oracle::p6_brute_force(10, 1.4, lam2);
  const double d1 = std::abs(res.condition_sum - ref.condition_sum);
  const double d2 = std::abs(res.s - ref.s);
  const bool pass = res.condition_sum < 1.0 && res.s < 7.0 / 18.0 && d1 <= 1e-12 && d2 <= 1e-12 &&
                    std::abs(res.gamma - 0.9) < 1e-15;
  return {pass, fmt("n=10, a=7/5, gamma=%.3g: condition sum %.6f < 1, S %.6f < 7/18, "
                    "oracle deviation %.3g (bound 1e-12)",
                    res.gamma, res.condition_sum, res.s, std::max(d1, d2))};
}

Verdict eigensolver_validation() {
  std::mt19937_64 rng(2718);
  std::normal_distribution<double> g;
  double worst_spec = 0.0;
  double worst_trace = 0.0;
  for (int n : {10, 50, 100, 200, 300}) {
    const ComplexMatrix q = oracle::random_unitary(n, rng);
    std::vector<Complex> d;
    for (int k = 0; k < n; ++k) d.emplace_back(5 * g(rng), 5 * g(rng));
    const ComplexMatrix m = q * Eigen::Map<Eigen::VectorXcd>(d.data(), n).asDiagonal() * q.adjoint();
    worst_spec = std::max(worst_spec, oracle::multiset_distance(eigenvalues(m).eigenvalues, d));

    const ComplexMatrix a = oracle::random_matrix(n, rng);
    Complex sum = 0;
    for (Complex z : eigenvalues(a).eigenvalues) sum += z;
    worst_trace = std::max(worst_trace, std::abs(sum - a.trace()) / std::max(1.0, a.norm()));
  }

  BlockSpec spec{2, {1.0, 1.5}, {}};
  spec.off_entries[{1, 2}] = {0.05, 0.3, 0.2, 1.2};
  spec.off_entries[{2, 1}] = {0.02, 0.4, 0.1, 0.8};
  const auto start = std::chrono::steady_clock::now();
  const MatrixBuilder build = [spec](std::size_t n) { return assemble(spec, n); };
  const auto s = stabilized_spectrum(build, 150, 2.0, 1e-6);
  const auto region = gribov_region(spec, 0.1, s);
  const auto diag = riesz_diagnostics(build(150).dense(), s, 0.5,
                                      gribov_certificate(spec, false).max_exponent());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst_spec <= 1e-10 && worst_trace <= 1e-9 && secs < 10.0 && region.alpha > 0.0 &&
                    diag.eigvec_condition >= 1.0;
  return {pass, fmt("unitary-similarity spectra error %.3g (bound 1e-10), trace error %.3g (bound 1e-9), "
                    "dim-300 pipeline %.2f s (bound 10 s)",
                    worst_spec, worst_trace, secs)};
}

Verdict certificate_arithmetic() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t count_violations = 0;
  for (int t = 0; t < 1000; ++t) {
    std::map<IndexPair, SubordinationCertificate> parts;
    std::size_t total = 0;
    const std::size_t n = 2 + std::size_t(u(rng) * 4);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        if (i == j || u(rng) < 0.3) continue;
        SubordinationCertificate c;
        const int terms = 1 + int(u(rng) * 5);
        for (int k = 0; k < terms; ++k) c.terms.push_back({u(rng), 10 * u(rng)});
        total += c.terms.size();
        parts[{i, j}] = c;
      }
    if (parts.empty()) continue;
    count_violations += merge_certificates(parts).terms.size() != total;
  }

  std::uniform_real_distribution<double> mag(-8.0, 8.0);
  std::size_t sub_violations = 0;
  for (int s = 0; s < 10000; ++s) {
    const double a = std::pow(10.0, mag(rng));
    const double b = std::pow(10.0, mag(rng));
    const double alpha = u(rng);
    const double beta = 1.0 + 4.0 * u(rng);
    if (std::pow(a + b, alpha) > (std::pow(a, alpha) + std::pow(b, alpha)) * (1 + 1e-14)) ++sub_violations;
    if (std::pow(a + b, beta) * (1 + 1e-14) < std::pow(a, beta) + std::pow(b, beta)) ++sub_violations;
  }
  return {count_violations == 0 && sub_violations == 0,
          fmt("term-count identity violations %g over 1000 merges, power-inequality violations %g over 1e4 samples",
              double(count_violations), double(sub_violations))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"diagonal exactness", diagonal_exactness},
      {"H1 oracle equality", h1_oracle},
      {"ladder inequality sweep", ladder_inequalities},
      {"self-adjoint regime", self_adjoint_regime},
      {"non-normal enclosure", non_normal_enclosure},
      {"counting asymptotics", counting_asymptotics_check},
      {"example family", example_family},
      {"eigensolver validation", eigensolver_validation},
      {"certificate arithmetic", certificate_arithmetic},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
