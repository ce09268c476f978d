#include <cmath>
#include <random>

#include "doctest.h"
#include "klmlab/errors.hpp"
#include "klmlab/linalg.hpp"
#include "test_util.hpp"

using namespace klmlab;
using namespace klmlab::linalg;
using testutil::max_abs;

namespace {

Vector unit_vector(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("tensor: identity, shapes and the composite index convention") {
  const Matrix i3 = Matrix::Identity(3, 3);
  CHECK(max_abs(tensor(i3, i3) - Matrix::Identity(9, 9)) == 0.0);

  CHECK(tensor(Matrix::Zero(2, 2), Matrix::Zero(3, 3)).rows() == 6);
  CHECK(tensor(Matrix::Zero(2, 2), Matrix::Zero(3, 3)).cols() == 6);

  // |r><0| on the first factor sends composite index 1 (= |0>|1>) to 7 (= |r>|1>)
  Matrix raise = Matrix::Zero(3, 3);
  raise(2, 0) = 1.0;
  const Vector mapped = tensor(raise, i3) * unit_vector(9, 1);
  CHECK(max_abs(mapped - unit_vector(9, 7)) == 0.0);
}

TEST_CASE("tensor: associative on integer matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-3, 3);
  auto int_matrix = [&](int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
  };
  const Matrix a = int_matrix(2), b = int_matrix(3), c = int_matrix(2);
  CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) == 0.0);
}

TEST_CASE("partial_transpose: product states, Bell state, involution") {
  std::mt19937 rng(11);

  // real symmetric rho_A is invariant under transposition
  Matrix rho_a = Matrix::Zero(3, 3);
  {
    std::normal_distribution<double> dist;
    Eigen::MatrixXd real(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) real(i, j) = dist(rng);
    Eigen::MatrixXd sym = real * real.transpose();
    sym /= sym.trace();
    rho_a = sym.cast<Complex>();
  }
  const Matrix rho_b = testutil::random_density(3, rng);
  const Matrix product = tensor(rho_a, rho_b);
  CHECK(max_abs(partial_transpose(product, 3, 3, Subsystem::A) - product) == 0.0);

  // Bell state: partial transpose has minimum eigenvalue -1/2
  Vector bell = Vector::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(3) = 1.0 / std::sqrt(2.0);
  const Matrix bell_rho = bell * bell.adjoint();
  const auto eig = eig_hermitian(partial_transpose(bell_rho, 2, 2));
  CHECK(eig.values.minCoeff() == doctest::Approx(-0.5).epsilon(1e-12));

  // involution and trace/Hermiticity preservation on random Hermitian input
  const Matrix h = testutil::random_hermitian(9, rng);
  const Matrix pt = partial_transpose(h, 3, 3, Subsystem::A);
  CHECK(max_abs(partial_transpose(pt, 3, 3, Subsystem::A) - h) == 0.0);
  CHECK(std::abs(pt.trace() - h.trace()) == 0.0);
  CHECK(is_hermitian(pt));

  const Matrix pt_b = partial_transpose(h, 3, 3, Subsystem::B);
  CHECK(max_abs(partial_transpose(pt_b, 3, 3, Subsystem::B) - h) == 0.0);
  // transposing both subsystems is the full transpose
  CHECK(max_abs(partial_transpose(pt, 3, 3, Subsystem::B) - h.transpose()) == 0.0);

  CHECK_THROWS_AS(partial_transpose(Matrix::Zero(5, 5), 2, 3), DimensionError);
}

TEST_CASE("trace_norm: PSD trace, signed diagonal, SVD oracle") {
  std::mt19937 rng(13);
  const Matrix rho = testutil::random_density(6, rng);
  CHECK(trace_norm(rho) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix signed_diag = Matrix::Zero(2, 2);
  signed_diag(0, 0) = 1.0;
  signed_diag(1, 1) = -1.0;
  CHECK(trace_norm(signed_diag) == doctest::Approx(2.0).epsilon(1e-14));

  // independent oracle: singular values are sqrt eigenvalues of A^dag A
  const Matrix a = testutil::random_matrix(7, 7, rng);
  const auto eig = eig_hermitian((a.adjoint() * a).eval());
  double expected = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    expected += std::sqrt(std::max(eig.values(i), 0.0));
  }
  CHECK(trace_norm(a) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("matrix_sqrt: fixed points, round trip, domain errors") {
  CHECK(max_abs(matrix_sqrt(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)) < 1e-14);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 9.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 3.0;
  CHECK(max_abs(matrix_sqrt(diag) - expected) < 1e-14);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = testutil::random_matrix(6, 6, rng);
    const Matrix psd = a * a.adjoint();
    const Matrix root = matrix_sqrt(psd);
    CHECK(is_hermitian(root));
    CHECK(max_abs(root * root - psd) < 1e-9 * std::max(1.0, max_abs(psd)));
  }

  // tiny negative eigenvalues clamp, larger ones are rejected
  Matrix nearly_psd = Matrix::Zero(2, 2);
  nearly_psd(0, 0) = 1.0;
  nearly_psd(1, 1) = -5e-11;
  CHECK(matrix_sqrt(nearly_psd)(1, 1).real() == 0.0);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.0;
  negative(1, 1) = -1e-3;
  CHECK_THROWS_AS(matrix_sqrt(negative), DomainError);

  Matrix non_hermitian = Matrix::Zero(2, 2);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(matrix_sqrt(non_hermitian), DomainError);
}

TEST_CASE("expm: zero, diagonal, nilpotent, inverse pairing") {
  CHECK(max_abs(expm(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)) == 0.0);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = Complex(0.3, 1.1);
  diag(1, 1) = Complex(-2.0, 0.0);
  const Matrix ediag = expm(diag);
  CHECK(std::abs(ediag(0, 0) - std::exp(Complex(0.3, 1.1))) < 1e-14);
  CHECK(std::abs(ediag(1, 1) - std::exp(Complex(-2.0, 0.0))) < 1e-14);
  CHECK(std::abs(ediag(0, 1)) == 0.0);

  // N^2 = 0 truncates the series after the linear term
  Matrix nilpotent = Matrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  CHECK(max_abs(expm(nilpotent) - (Matrix::Identity(2, 2) + nilpotent)) == 0.0);

  std::mt19937 rng(19);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix a = testutil::random_matrix(8, 8, rng);
    a *= 10.0 / a.norm();
    CHECK(max_abs(expm(a) * expm((-a).eval()) - Matrix::Identity(8, 8)) < 1e-9);
  }
}

TEST_CASE("expm: large anti-Hermitian norms against an eigenbasis oracle") {
  std::mt19937 rng(23);
  const Matrix h = testutil::random_hermitian(6, rng);
  const Matrix a = Complex(0.0, -1.0) * h * (1000.0 / max_abs(h));
  const auto eig = eig_hermitian((Complex(0.0, 1.0) * a).eval());
  Vector phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.values(i)));
  }
  const Matrix oracle = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  CHECK(max_abs(expm(a) - oracle) < 1e-10);
}

TEST_CASE("null_space: diagonal, full rank, rank-deficient residuals") {
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  const auto basis = null_space(singular);
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(std::abs(basis[0](1)) - 1.0) < 1e-12);
  CHECK(std::abs(basis[0](0)) < 1e-12);

  std::mt19937 rng(29);
  CHECK(null_space(testutil::random_matrix(8, 8, rng)).empty());

  // rank n-k products have a k-dimensional kernel
  for (int k : {1, 3}) {
    const int n = 9;
    const Matrix left = testutil::random_matrix(n, n - k, rng);
    const Matrix right = testutil::random_matrix(n - k, n, rng);
    const Matrix deficient = left * right;
    const auto kernel = null_space(deficient);
    REQUIRE(static_cast<int>(kernel.size()) == k);
    for (size_t i = 0; i < kernel.size(); ++i) {
      CHECK((deficient * kernel[i]).norm() < 1e-8);
      for (size_t j = 0; j < kernel.size(); ++j) {
        const Complex overlap = kernel[i].adjoint() * kernel[j];
        CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }

  // a zero matrix annihilates everything
  CHECK(null_space(Matrix::Zero(4, 4)).size() == 4);
}

TEST_CASE("eig_hermitian: ordering, reconstruction, rejection") {
  const auto id3 = eig_hermitian(Matrix::Identity(3, 3));
  CHECK(id3.values(0) == 1.0);
  CHECK(id3.values(2) == 1.0);

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const auto sorted = eig_hermitian(diag);
  CHECK(sorted.values(0) == doctest::Approx(1.0));
  CHECK(sorted.values(1) == doctest::Approx(2.0));
  CHECK(sorted.values(2) == doctest::Approx(3.0));

  std::mt19937 rng(31);
  const Matrix h = testutil::random_hermitian(9, rng);
  const auto eig = eig_hermitian(h);
  const Matrix rebuilt =
      eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  CHECK(max_abs(rebuilt - h) < 1e-9);

  Matrix non_hermitian = Matrix::Zero(2, 2);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(non_hermitian), DomainError);
}

TEST_CASE("DensityMatrix: validation gates") {
  std::mt19937 rng(37);
  CHECK_NOTHROW(DensityMatrix(testutil::random_density(5, rng)));
  CHECK_NOTHROW(DensityMatrix::pure(testutil::random_ket(5, rng)));

  Matrix wrong_trace = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(DensityMatrix{wrong_trace}, NumericalError);

  Matrix non_hermitian = Matrix::Zero(2, 2);
  non_hermitian(0, 0) = 1.0;
  non_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{non_hermitian}, NumericalError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.01;
  negative(1, 1) = -0.01;
  CHECK_THROWS_AS(DensityMatrix{negative}, NumericalError);

  Vector unnormalized = Vector::Ones(4);
  CHECK_THROWS_AS(DensityMatrix::pure(unnormalized), ValidationError);
}
