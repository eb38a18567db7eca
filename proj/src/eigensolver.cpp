#include "gribov/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "gribov/errors.hpp"
#include "gribov/parallel.hpp"

namespace gribov {
namespace {

using Index = Eigen::Index;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHermitianTol = 1e-13;
constexpr std::size_t kSweepsPerDim = 30;

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::kInvalidInput, "eigensolver needs a nonempty square matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, "matrix has non-finite entries");
  }
}

bool is_hermitian(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm() <= kHermitianTol * m.norm();
}

double phase(const Complex& z) {
  if (z.imag() == 0.0 && z.real() >= 0.0) return 0.0;
  double a = std::atan2(z.imag(), z.real());
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

// Replaces negative zeros by positive ones.
Complex canonical(Complex z) { return {z.real() + 0.0, z.imag() + 0.0}; }

// Givens rotation U = [c s; -conj(s) c] with U [f; g] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s = 0.0;

  static Givens make(Complex f, Complex g) {
    Givens rot;
    const double af = std::abs(f);
    const double ag = std::abs(g);
    if (ag == 0.0) return rot;
    if (af == 0.0) {
      rot.c = 0.0;
      rot.s = std::conj(g) / ag;
      return rot;
    }
    const double rho = std::hypot(af, ag);
    rot.c = af / rho;
    rot.s = (f / af) * std::conj(g) / rho;
    return rot;
  }
};

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex e1 = half_tr + disc;
  const Complex e2 = half_tr - disc;
  // Larger root from the sum, the other from the determinant, then pick the
  // one closer to d.
  const Complex big = std::abs(e1) >= std::abs(e2) ? e1 : e2;
  const Complex det = a * d - b * c;
  const Complex small = big == Complex(0.0) ? Complex(0.0) : det / big;
  return std::abs(big - d) < std::abs(small - d) ? big : small;
}

struct QrOutcome {
  std::vector<Complex> values;
  std::size_t sweeps = 0;
  double neglected = 0.0;
};

// Eigenvalues of an upper Hessenberg matrix; only the active window is updated.
QrOutcome hessenberg_qr(ComplexMatrix t) {
  const Index n = t.rows();
  QrOutcome out;
  out.values.assign(static_cast<std::size_t>(n), Complex(0.0));
  const double norm = t.norm();
  const std::size_t budget = kSweepsPerDim * static_cast<std::size_t>(n);

  Index iu = n - 1;
  std::size_t since_deflation = 0;
  while (iu >= 0) {
    Index l = iu;
    for (; l > 0; --l) {
      const double sub = std::abs(t(l, l - 1));
      double tst = std::abs(t(l, l)) + std::abs(t(l - 1, l - 1));
      if (tst == 0.0) tst = norm;
      if (sub <= kEps * tst) {
        out.neglected += sub;
        t(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == iu) {
      out.values[static_cast<std::size_t>(iu)] = t(iu, iu);
      --iu;
      since_deflation = 0;
      continue;
    }
    if (out.sweeps >= budget) {
      std::vector<Complex> partial(out.values.begin() + (iu + 1), out.values.end());
      throw IterationLimitError("QR iteration did not converge within " +
                                    std::to_string(budget) + " sweeps (" +
                                    std::to_string(partial.size()) + " of " +
                                    std::to_string(n) + " eigenvalues deflated)",
                                std::move(partial));
    }
    ++out.sweeps;
    ++since_deflation;

    Complex shift;
    if (since_deflation % 20 == 10) {
      shift = t(l, l) + 0.75 * std::abs(t(l + 1, l).real());
    } else if (since_deflation % 20 == 0) {
      shift = t(iu, iu) + 0.75 * std::abs(t(iu, iu - 1).real());
    } else {
      shift = wilkinson_shift(t(iu - 1, iu - 1), t(iu - 1, iu), t(iu, iu - 1), t(iu, iu));
    }

    for (Index k = l; k < iu; ++k) {
      const Complex f = k == l ? t(l, l) - shift : t(k, k - 1);
      const Complex g = k == l ? t(l + 1, l) : t(k + 1, k - 1);
      const Givens rot = Givens::make(f, g);
      for (Index j = std::max(l, k - 1); j <= iu; ++j) {
        const Complex t1 = t(k, j);
        const Complex t2 = t(k + 1, j);
        t(k, j) = rot.c * t1 + rot.s * t2;
        t(k + 1, j) = -std::conj(rot.s) * t1 + rot.c * t2;
      }
      if (k > l) t(k + 1, k - 1) = 0.0;
      for (Index i = l; i <= std::min(k + 2, iu); ++i) {
        const Complex t1 = t(i, k);
        const Complex t2 = t(i, k + 1);
        t(i, k) = rot.c * t1 + std::conj(rot.s) * t2;
        t(i, k + 1) = -rot.s * t1 + rot.c * t2;
      }
    }
  }
  return out;
}

// Eigenvalues of the real symmetric tridiagonal (d, e) by implicit QL with
// Wilkinson-type shifts. e[i] couples i and i+1; e[n-1] is unused.
QrOutcome symmetric_tridiagonal_ql(std::vector<double> d, std::vector<double> e) {
  const std::size_t n = d.size();
  QrOutcome out;
  const std::size_t budget = kSweepsPerDim * n;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) {
          out.neglected += std::abs(e[m]);
          e[m] = 0.0;
          break;
        }
      }
      if (m == l) break;
      if (out.sweeps >= budget) {
        std::vector<Complex> partial(d.begin(), d.begin() + static_cast<long>(l));
        throw IterationLimitError("symmetric QL did not converge within " +
                                      std::to_string(budget) + " sweeps",
                                  std::move(partial));
      }
      ++out.sweeps;
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  out.values.assign(d.begin(), d.end());
  return out;
}

// LU with partial pivoting of (H - shift I) for upper Hessenberg H. Only rows
// k and k+1 compete for the pivot in column k.
class HessenbergLu {
 public:
  HessenbergLu(const ComplexMatrix& h, Complex shift, double tiny)
      : u_(h), mult_(static_cast<std::size_t>(h.rows()), Complex(0.0)),
        swapped_(static_cast<std::size_t>(h.rows()), false) {
    const Index n = u_.rows();
    u_.diagonal().array() -= shift;
    for (Index k = 0; k + 1 < n; ++k) {
      if (std::abs(u_(k + 1, k)) > std::abs(u_(k, k))) {
        u_.row(k).swap(u_.row(k + 1));
        swapped_[static_cast<std::size_t>(k)] = true;
      }
      if (u_(k, k) == Complex(0.0)) u_(k, k) = tiny;
      const Complex m = u_(k + 1, k) / u_(k, k);
      mult_[static_cast<std::size_t>(k)] = m;
      u_(k + 1, k) = 0.0;
      if (m != Complex(0.0)) {
        u_.row(k + 1).tail(n - k - 1) -= m * u_.row(k).tail(n - k - 1);
      }
    }
    for (Index k = 0; k < n; ++k) {
      if (std::abs(u_(k, k)) < tiny) u_(k, k) = tiny;
    }
  }

  ComplexVector solve(ComplexVector x) const {
    const Index n = u_.rows();
    for (Index k = 0; k + 1 < n; ++k) {
      if (swapped_[static_cast<std::size_t>(k)]) std::swap(x(k), x(k + 1));
      x(k + 1) -= mult_[static_cast<std::size_t>(k)] * x(k);
    }
    u_.triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
  }

 private:
  ComplexMatrix u_;
  std::vector<Complex> mult_;
  std::vector<bool> swapped_;
};

ComplexVector start_vector(Index n, std::size_t j) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(j));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ComplexVector x(n);
  for (Index i = 0; i < n; ++i) {
    const double re = uni(rng);
    x(i) = Complex(re, uni(rng));
  }
  return x.normalized();
}

void orthogonalize(ComplexVector& x, const std::vector<const ComplexVector*>& basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const ComplexVector* b : basis) x -= b->dot(x) * (*b);
  }
}

}  // namespace

std::vector<std::size_t> SpectrumResult::stabilized_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < stabilized.size(); ++i) {
    if (stabilized[i]) out.push_back(i);
  }
  return out;
}

bool spectral_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return phase(a) < phase(b);
}

HessenbergForm hessenberg(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::kInvalidInput, "Hessenberg reduction needs a square matrix");
  }
  const Index n = m.rows();
  HessenbergForm out{m, ComplexMatrix::Identity(n, n)};
  ComplexMatrix& h = out.h;
  for (Index k = 0; k + 2 < n; ++k) {
    const Index len = n - k - 1;
    if (h.col(k).tail(len - 1).squaredNorm() == 0.0) continue;
    ComplexVector v = h.col(k).tail(len);
    const double xnorm = v.norm();
    const Complex x0 = v(0);
    const Complex unit = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -unit * xnorm;
    v(0) -= alpha;
    const double tau = 2.0 / v.squaredNorm();

    auto lower = h.bottomRightCorner(len, n - k);
    lower -= (tau * v) * (v.adjoint() * lower);
    auto right = h.rightCols(len);
    right -= (right * v) * (tau * v.adjoint());
    auto qright = out.q.rightCols(len);
    qright -= (qright * v) * (tau * v.adjoint());

    h(k + 1, k) = alpha;
    h.col(k).tail(len - 1).setZero();
  }
  return out;
}

HessenbergForm hessenberg(const BandedComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kInvalidInput, "Hessenberg reduction needs a square matrix");
  }
  return hessenberg(m.dense());
}

SpectrumResult eigenvalues(const ComplexMatrix& m) {
  require_square(m);
  const Index n = m.rows();
  SpectrumResult out;
  out.hermitian = is_hermitian(m);
  const HessenbergForm hf = hessenberg(m);

  QrOutcome qr;
  if (out.hermitian) {
    std::vector<double> d(static_cast<std::size_t>(n));
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (Index k = 0; k < n; ++k) {
      d[static_cast<std::size_t>(k)] = hf.h(k, k).real();
      if (k + 1 < n) e[static_cast<std::size_t>(k)] = std::abs(hf.h(k + 1, k));
    }
    qr = symmetric_tridiagonal_ql(std::move(d), std::move(e));
  } else {
    qr = hessenberg_qr(hf.h);
  }

  out.eigenvalues.reserve(qr.values.size());
  for (const Complex& z : qr.values) out.eigenvalues.push_back(canonical(z));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), spectral_order);
  const double norm = m.norm();
  out.residual_bound = norm > 0.0 ? qr.neglected / norm : 0.0;
  out.iterations = qr.sweeps;
  out.stabilized.assign(out.eigenvalues.size(), true);
  return out;
}

SpectrumResult eigenvalues(const BandedComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kInvalidInput, "eigenvalues need a square matrix");
  }
  return eigenvalues(m.dense());
}

namespace {

// Unit vectors matched to diagonal entries; the nearest unused entry wins.
EigenvectorResult diagonal_eigenvectors(const ComplexMatrix& m, const SpectrumResult& spectrum) {
  const Index n = m.rows();
  EigenvectorResult out;
  out.vectors = ComplexMatrix::Zero(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double worst = 0.0;
  for (Index j = 0; j < n; ++j) {
    const Complex lambda = spectrum.eigenvalues[static_cast<std::size_t>(j)];
    Index best = -1;
    for (Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || std::abs(m(i, i) - lambda) < std::abs(m(best, best) - lambda)) best = i;
    }
    used[static_cast<std::size_t>(best)] = true;
    out.vectors(best, j) = 1.0;
    worst = std::max(worst, std::abs(m(best, best) - lambda));
  }
  const double mnorm = m.norm();
  out.residual_bound = mnorm > 0.0 ? worst / mnorm : worst;
  return out;
}

}  // namespace

EigenvectorResult eigenvectors(const ComplexMatrix& m, const SpectrumResult& spectrum) {
  require_square(m);
  const Index n = m.rows();
  if (spectrum.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::kInvalidInput, "spectrum does not match matrix dimension");
  }
  if (ComplexMatrix(m.diagonal().asDiagonal()) == m) return diagonal_eigenvectors(m, spectrum);
  const bool hermitian = is_hermitian(m);
  const HessenbergForm hf = hessenberg(m);
  const double hnorm = std::max(hf.h.norm(), std::numeric_limits<double>::min());
  const double tiny = kEps * hnorm;
  const double herm_cluster = 1e-3 * hnorm;

  std::vector<ComplexVector> local(static_cast<std::size_t>(n));
  EigenvectorResult out;
  out.vectors.resize(n, n);

  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const Complex lambda = spectrum.eigenvalues[j];
    std::vector<const ComplexVector*> cluster;
    for (std::size_t i = 0; i < j; ++i) {
      const double gap = std::abs(spectrum.eigenvalues[i] - lambda);
      if (gap <= 1e-8 * (1.0 + std::abs(lambda)) || (hermitian && gap <= herm_cluster)) {
        cluster.push_back(&local[i]);
      }
    }

    const HessenbergLu lu(hf.h, lambda, tiny);
    ComplexVector x = start_vector(n, j);
    orthogonalize(x, cluster);
    x.normalize();

    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 8; ++it) {
      ComplexVector y = lu.solve(x);
      if (hermitian) orthogonalize(y, cluster);
      const double ynorm = y.norm();
      if (!(ynorm > 0.0) || !std::isfinite(ynorm)) break;
      x = y / ynorm;
      const double next = (hf.h * x - lambda * x).norm();
      const bool converged = next <= 1e-13 * hnorm;
      const bool stalled = next > 0.5 * residual;
      residual = std::min(residual, next);
      if (converged || stalled) break;
    }
    if (!(residual <= 1e-8 * hnorm)) {
      out.stagnated.push_back(j);
      out.defective_warning = true;
    }
    local[j] = x;
    out.vectors.col(static_cast<Index>(j)) = (hf.q * x).normalized();
  }

  ComplexMatrix lam = out.vectors;
  for (Index j = 0; j < n; ++j) lam.col(j) *= spectrum.eigenvalues[static_cast<std::size_t>(j)];
  const double mnorm = m.norm();
  const Eigen::VectorXd res = (m * out.vectors - lam).colwise().norm();
  out.residual_bound = mnorm > 0.0 ? res.maxCoeff() / mnorm : res.maxCoeff();
  return out;
}

EigenvectorResult eigenvectors(const BandedComplexMatrix& m,
                               const SpectrumResult& spectrum) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kInvalidInput, "eigenvectors need a square matrix");
  }
  return eigenvectors(m.dense(), spectrum);
}

std::size_t counting(const SpectrumResult& spectrum, double r) {
  return static_cast<std::size_t>(
      std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                    [r](const Complex& z) { return std::abs(z) <= r; }));
}

SpectrumResult stabilized_spectrum(const MatrixBuilder& build, std::size_t trunc,
                                   double growth, double rel_tol) {
  if (!(growth > 1.0) || !std::isfinite(growth)) {
    throw Error(ErrorKind::kInvalidParameter, "growth must exceed 1");
  }
  if (!(rel_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "rel_tol must be positive");
  }
  if (trunc == 0) {
    throw Error(ErrorKind::kInvalidTruncation, "truncation size must be >= 1");
  }
  const auto larger = std::max(
      trunc + 1, static_cast<std::size_t>(std::ceil(growth * static_cast<double>(trunc))));

  SpectrumResult small;
  SpectrumResult big;
  if (worker_count() > 1) {
    auto pending = std::async(std::launch::async, [&] { return eigenvalues(build(larger)); });
    small = eigenvalues(build(trunc));
    big = pending.get();
  } else {
    small = eigenvalues(build(trunc));
    big = eigenvalues(build(larger));
  }

  for (std::size_t i = 0; i < small.size(); ++i) {
    const Complex z = small.eigenvalues[i];
    const double tol = rel_tol * (1.0 + std::abs(z));
    small.stabilized[i] = std::any_of(big.eigenvalues.begin(), big.eigenvalues.end(),
                                      [&](const Complex& w) { return std::abs(w - z) <= tol; });
  }
  small.reference_trunc = larger;
  return small;
}

}  // namespace gribov
