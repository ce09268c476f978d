// Copyright 2026 The klmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "klmlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "klmlab/errors.hpp"

namespace klmlab::linalg {

namespace {

void require_square(const Matrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return hermiticity_defect(a) <= tol * scale;
}

Matrix hermitize(const Matrix& a) {
  Matrix out = a.adjoint();
  out += a;
  out /= 2.0;
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_transpose(const Matrix& rho, int dim_a, int dim_b, Subsystem subsystem) {
  require_square(rho, "partial_transpose");
  if (dim_a <= 0 || dim_b <= 0 ||
      static_cast<long>(dim_a) * dim_b != rho.rows()) {
    throw DimensionError("partial_transpose: dims [" + std::to_string(dim_a) + "," +
                         std::to_string(dim_b) + "] do not factor dimension " +
                         std::to_string(rho.rows()));
  }
  Matrix out(rho.rows(), rho.cols());
  for (int ia = 0; ia < dim_a; ++ia) {
    for (int ib = 0; ib < dim_b; ++ib) {
      for (int ja = 0; ja < dim_a; ++ja) {
        for (int jb = 0; jb < dim_b; ++jb) {
          const int row = ia * dim_b + ib;
          const int col = ja * dim_b + jb;
          const int out_row = (subsystem == Subsystem::A) ? ja * dim_b + ib : ia * dim_b + jb;
          const int out_col = (subsystem == Subsystem::A) ? ia * dim_b + jb : ja * dim_b + ib;
          out(out_row, out_col) = rho(row, col);
        }
      }
    }
  }
  return out;
}

double trace_norm(const Matrix& a) {
  require_square(a, "trace_norm");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

Matrix matrix_sqrt(const Matrix& a) {
  require_square(a, "matrix_sqrt");
  if (!is_hermitian(a)) {
    throw DomainError("matrix_sqrt: input is not Hermitian (defect " +
                      std::to_string(hermiticity_defect(a)) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  RealVector values = es.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  RealVector roots(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kPsdClampTol * scale) {
      throw DomainError("matrix_sqrt: spectrum significantly negative, eigenvalue " +
                        std::to_string(values(i)));
    }
    roots(i) = std::sqrt(std::max(values(i), 0.0));
  }
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix expm(const Matrix& a) {
  require_square(a, "expm");
  return a.exp();
}

std::vector<Vector> null_space(const Matrix& a, double tol) {
  require_square(a, "null_space");
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma_max == 0.0 || sigma(i) < tol * sigma_max) {
      basis.push_back(svd.matrixV().col(i));
    }
  }
  return basis;
}

HermitianEig eig_hermitian(const Matrix& a) {
  require_square(a, "eig_hermitian");
  if (!is_hermitian(a)) {
    throw DomainError("eig_hermitian: input is not Hermitian (defect " +
                      std::to_string(hermiticity_defect(a)) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace klmlab::linalg

namespace klmlab {

namespace {

constexpr double kStateTraceTol = 1e-6;
constexpr double kStateHermTol = 1e-6;
constexpr double kStateEigTol = 1e-6;

}  // namespace

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionError("DensityMatrix: operator must be square and nonempty");
  }
  const double trace_err = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (trace_err > kStateTraceTol) {
    throw NumericalError("DensityMatrix: trace deviates from 1 by " +
                         std::to_string(trace_err));
  }
  if (linalg::hermiticity_defect(rho_) > kStateHermTol) {
    throw NumericalError("DensityMatrix: Hermiticity defect " +
                         std::to_string(linalg::hermiticity_defect(rho_)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho_ + rho_.adjoint()) / 2.0,
                                           Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kStateEigTol) {
    throw NumericalError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ValidationError("DensityMatrix::pure: ket norm deviates from 1 by " +
                          std::to_string(std::abs(norm - 1.0)));
  }
  return DensityMatrix((psi * psi.adjoint()).eval());
}

}  // namespace klmlab
