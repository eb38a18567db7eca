#include <doctest.h>

#include <random>

#include "gribov/bargmann.hpp"
#include "gribov/block_assembly.hpp"
#include "gribov/eigensolver.hpp"
#include "gribov/errors.hpp"
#include "oracles.hpp"

using namespace gribov;

namespace {

BlockSpec random_spec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> b(0.1, 2.9);
  BlockSpec spec;
  spec.n = n;
  for (std::size_t j = 0; j < n; ++j) spec.diag_couplings.push_back(0.5 + std::abs(u(rng)));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) spec.off_entries[{i, j}] = {u(rng), u(rng), u(rng), b(rng)};
  return spec;
}

bool has_reason(const std::vector<Diagnostic>& d, const std::string& reason) {
  for (const auto& x : d)
    if (x.reason.find(reason) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("block_assembly") {

TEST_CASE("validate_spec diagnostics") {
  BlockSpec ok{2, {1.0, 1.0}, {}};
  CHECK(validate_spec(ok).empty());

  BlockSpec zero = ok;
  zero.diag_couplings[1] = 0.0;
  CHECK(has_reason(validate_spec(zero), "diag coupling zero"));

  BlockSpec beta = ok;
  beta.off_entries[{1, 2}] = {0, 0, 1, 3.5};
  CHECK(has_reason(validate_spec(beta), "beta out of (0,3)"));

  BlockSpec small{1, {1.0}, {}};
  CHECK_FALSE(validate_spec(small).empty());

  BlockSpec diag_pair = ok;
  diag_pair.off_entries[{1, 1}] = {};
  CHECK_FALSE(validate_spec(diag_pair).empty());

  BlockSpec count = ok;
  count.diag_couplings.push_back(1.0);
  CHECK_FALSE(validate_spec(count).empty());

  CHECK_THROWS_AS(assemble(zero, 5), Error);
  CHECK(ok.entry(1, 2) == EntryParams{});
  CHECK(ok.entry(1, 2).beta == 1.0);
  CHECK_THROWS_AS(ok.entry(2, 2), Error);
  CHECK(ok.off_diagonal_pairs() == std::vector<IndexPair>{{1, 2}, {2, 1}});
}

TEST_CASE("zero off-couplings give the union of block spectra") {
  BlockSpec spec{2, {1.0, 3.0}, {}};
  const std::size_t n = 15;
  const auto m = assemble(spec, n);
  CHECK(m.rows() == 2 * n);
  std::vector<Complex> expected;
  for (double lam : spec.diag_couplings)
    for (std::size_t k = 1; k <= n; ++k) expected.push_back(lam * double((k - 2) * (k - 1) * k));
  const auto got = eigenvalues(m).eigenvalues;
  CHECK(oracle::multiset_distance(got, expected) == 0.0);
  CHECK((m.dense() - m.dense().diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
}

TEST_CASE("off-diagonal intercept entry is diag(k)") {
  BlockSpec spec{2, {1.0, 1.0}, {}};
  spec.off_entries[{1, 2}] = {0, 0, 1, 1};
  spec.off_entries[{2, 1}] = {0, 0, 1, 1};
  const std::size_t n = 8;
  const ComplexMatrix m = assemble(spec, n).dense();
  CHECK(m.block(0, n, n, n) == bargmann::build_h0(n).dense());
  CHECK(m.block(n, 0, n, n) == bargmann::build_h0(n).dense());
  CHECK(m.block(0, 0, n, n) == bargmann::build_g(n).dense());
}

TEST_CASE("block (i,j) maps component j into component i") {
  BlockSpec spec{3, {1.0, 2.0, 3.0}, {}};
  spec.off_entries[{1, 3}] = {0.7, 0.2, 0.3, 1.5};
  const std::size_t n = 6;
  const ComplexMatrix m = assemble(spec, n).dense();
  bargmann::PomeronParams p{0.0, 0.7, 0.3, 0.2, 1.5};
  CHECK((m.block(0, 2 * n, n, n) - bargmann::build_scalar_gribov(n, p, false).dense()).norm() == 0.0);
  CHECK(m.block(2 * n, 0, n, n).norm() == 0.0);
  CHECK((m.block(2 * n, 2 * n, n, n) - 3.0 * bargmann::build_g(n).dense()).norm() == 0.0);
}

TEST_CASE("split parts sum to the assembled matrix") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 3u, 4u}) {
    const BlockSpec spec = random_spec(n, rng);
    const auto parts = split(spec, 9);
    const ComplexMatrix sum =
        (parts.diagonal + parts.four + parts.triple + parts.intercept).dense();
    const ComplexMatrix m = assemble(spec, 9).dense();
    CHECK((sum - m).cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + m.cwiseAbs().maxCoeff()));
    const ComplexMatrix h = parts.triple.dense() * Complex(0, -1);
    CHECK(h.imag().norm() == 0.0);
    CHECK(parts.diagonal.dense() == assemble_diagonal(spec, 9).dense());
  }

  BlockSpec zero{3, {1.0, 2.0, 3.0}, {}};
  const auto parts = split(zero, 5);
  CHECK(parts.four.dense().norm() == 0.0);
  CHECK(parts.triple.dense().norm() == 0.0);
  CHECK(parts.intercept.dense().norm() == 0.0);
}

TEST_CASE("symmetric four-coupling part is Hermitian, triple part anti-Hermitian") {
  BlockSpec spec{2, {1.0, 1.0}, {}};
  spec.off_entries[{1, 2}] = {0.4, 0.3, 0.0, 1.0};
  spec.off_entries[{2, 1}] = {0.4, 0.3, 0.0, 1.0};
  const auto parts = split(spec, 10);
  CHECK(parts.four.dense() == parts.four.dense().adjoint());
  CHECK(parts.triple.dense() == -parts.triple.dense().adjoint());
}

TEST_CASE("assemble is linear in the couplings") {
  std::mt19937_64 rng(5);
  BlockSpec a = random_spec(3, rng);
  BlockSpec b = random_spec(3, rng);
  BlockSpec sum = a;
  for (std::size_t j = 0; j < 3; ++j) sum.diag_couplings[j] += b.diag_couplings[j];
  for (auto& [ij, e] : sum.off_entries) {
    const EntryParams& o = b.off_entries.at(ij);
    e.lambda1 += o.lambda1;
    e.lambda += o.lambda;
    e.mu += o.mu;
    b.off_entries[ij].beta = e.beta;
  }
  const ComplexMatrix lhs = assemble(sum, 10).dense();
  const ComplexMatrix rhs = assemble(a, 10).dense() + assemble(b, 10).dense();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * lhs.cwiseAbs().maxCoeff());
}

TEST_CASE("real symmetric couplings without triple terms give a Hermitian matrix") {
  BlockSpec spec{3, {1.0, 2.0, 0.5}, {}};
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = i + 1; j <= 3; ++j) {
      const EntryParams e{0.1 * double(i + j), 0.0, 0.2 * double(i * j), 0.5 + 0.3 * double(i)};
      spec.off_entries[{i, j}] = e;
      spec.off_entries[{j, i}] = e;
    }
  const auto m = assemble(spec, 12);
  CHECK(m.is_hermitian(0.0));
  CHECK(m.dense().imag().norm() == 0.0);
  CHECK(m.lower_bw() <= 2 * 12 + 1);
}

TEST_CASE("exact-image remainder keeps one extra row per block") {
  std::mt19937_64 rng(3);
  const BlockSpec spec = random_spec(2, rng);
  const std::size_t n = 7;
  const auto img = assemble_remainder_image(spec, n);
  CHECK(img.rows() == 2 * (n + 1));
  CHECK(img.cols() == 2 * n);
  const auto parts = split(spec, n);
  const ComplexMatrix r = (parts.four + parts.triple + parts.intercept).dense();
  for (std::size_t bi = 0; bi < 2; ++bi)
    for (std::size_t bj = 0; bj < 2; ++bj)
      CHECK((img.dense().block(bi * (n + 1), bj * n, n, n) - r.block(bi * n, bj * n, n, n)).norm() == 0.0);
}

}
