#include "gribov/banded_matrix.hpp"

#include <algorithm>
#include <string>

#include "gribov/errors.hpp"

namespace gribov {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidTruncation: return "invalid-truncation";
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidIndex: return "invalid-index";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kUnsupportedConfiguration: return "unsupported-configuration";
    case ErrorKind::kIterationLimit: return "iteration-limit";
    case ErrorKind::kIllSeparatedClusters: return "ill-separated-clusters";
  }
  return "unknown";
}

BandedComplexMatrix::BandedComplexMatrix(std::size_t rows, std::size_t cols,
                                         std::size_t lower_bw,
                                         std::size_t upper_bw)
    : data_(ComplexMatrix::Zero(static_cast<Eigen::Index>(rows),
                                static_cast<Eigen::Index>(cols))),
      lower_bw_(lower_bw),
      upper_bw_(upper_bw) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::kInvalidTruncation, "matrix dimensions must be positive");
  }
  if (rows < cols) {
    throw Error(ErrorKind::kInvalidInput, "banded matrix requires rows >= cols");
  }
}

BandedComplexMatrix BandedComplexMatrix::from_dense(const ComplexMatrix& m) {
  std::size_t lower = 0;
  std::size_t upper = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) == Complex(0.0)) continue;
      if (r > c) lower = std::max(lower, static_cast<std::size_t>(r - c));
      if (c > r) upper = std::max(upper, static_cast<std::size_t>(c - r));
    }
  }
  BandedComplexMatrix out(static_cast<std::size_t>(m.rows()),
                          static_cast<std::size_t>(m.cols()), lower, upper);
  out.data_ = m;
  return out;
}

Complex BandedComplexMatrix::at(std::size_t r, std::size_t c) const {
  if (r == 0 || c == 0 || r > rows() || c > cols()) {
    throw Error(ErrorKind::kInvalidIndex,
                "entry (" + std::to_string(r) + "," + std::to_string(c) +
                    ") outside matrix");
  }
  return data_(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1));
}

void BandedComplexMatrix::set(std::size_t r, std::size_t c, Complex value) {
  if (r == 0 || c == 0 || r > rows() || c > cols() || !in_band(r, c)) {
    throw Error(ErrorKind::kInvalidIndex,
                "entry (" + std::to_string(r) + "," + std::to_string(c) +
                    ") outside band");
  }
  data_(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1)) = value;
}

void BandedComplexMatrix::add(std::size_t r, std::size_t c, Complex value) {
  set(r, c, at(r, c) + value);
}

BandedComplexMatrix& BandedComplexMatrix::operator+=(
    const BandedComplexMatrix& other) {
  if (other.rows() != rows() || other.cols() != cols()) {
    throw Error(ErrorKind::kInvalidInput, "shape mismatch in matrix sum");
  }
  data_ += other.data_;
  lower_bw_ = std::max(lower_bw_, other.lower_bw_);
  upper_bw_ = std::max(upper_bw_, other.upper_bw_);
  return *this;
}

BandedComplexMatrix& BandedComplexMatrix::operator*=(Complex scale) {
  data_ *= scale;
  return *this;
}

Eigen::VectorXd BandedComplexMatrix::column_norms() const {
  return data_.colwise().norm().transpose();
}

bool BandedComplexMatrix::is_hermitian(double rel_tol) const {
  if (!is_square()) return false;
  const double scale = data_.norm();
  return (data_ - data_.adjoint()).norm() <= rel_tol * scale;
}

}  // namespace gribov
