#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace gribov {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Complex matrix with bandwidth metadata.
///
/// Entry (r, c) is the coefficient of e_r in the image of e_c, with 1-based
/// indices on the public accessors. Entries outside the band
/// [c - upper_bw, c + lower_bw] are structurally zero and cannot be written.
/// Rectangular shapes are allowed only with rows > cols ("exact image" form,
/// which keeps the rows a finite section would drop).
///
/// Storage is dense; the band is metadata used for validation and for the
/// structure checks in the eigensolver.
class BandedComplexMatrix {
 public:
  BandedComplexMatrix(std::size_t rows, std::size_t cols, std::size_t lower_bw,
                      std::size_t upper_bw);

  static BandedComplexMatrix square(std::size_t n, std::size_t lower_bw,
                                    std::size_t upper_bw) {
    return BandedComplexMatrix(n, n, lower_bw, upper_bw);
  }

  /// Wraps a dense matrix; bandwidths are measured from the nonzero pattern.
  static BandedComplexMatrix from_dense(const ComplexMatrix& m);

  std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(data_.cols()); }
  std::size_t lower_bw() const { return lower_bw_; }
  std::size_t upper_bw() const { return upper_bw_; }
  bool is_square() const { return rows() == cols(); }

  bool in_band(std::size_t r, std::size_t c) const {
    return r <= c + lower_bw_ && c <= r + upper_bw_;
  }

  /// 1-based read; returns 0 outside the band.
  Complex at(std::size_t r, std::size_t c) const;
  /// 1-based write; throws invalid-index outside the shape or band.
  void set(std::size_t r, std::size_t c, Complex value);
  void add(std::size_t r, std::size_t c, Complex value);

  const ComplexMatrix& dense() const { return data_; }

  BandedComplexMatrix& operator+=(const BandedComplexMatrix& other);
  BandedComplexMatrix& operator*=(Complex scale);
  friend BandedComplexMatrix operator+(BandedComplexMatrix a,
                                       const BandedComplexMatrix& b) {
    a += b;
    return a;
  }
  friend BandedComplexMatrix operator*(Complex s, BandedComplexMatrix a) {
    a *= s;
    return a;
  }

  /// Column norms ||H e_c|| for c = 1..cols (0-based vector).
  Eigen::VectorXd column_norms() const;

  bool is_hermitian(double rel_tol) const;

 private:
  ComplexMatrix data_;
  std::size_t lower_bw_;
  std::size_t upper_bw_;
};

}  // namespace gribov
