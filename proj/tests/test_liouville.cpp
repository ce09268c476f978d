#include <cmath>
#include <random>

#include "doctest.h"
#include "klmlab/errors.hpp"
#include "klmlab/liouville.hpp"
#include "klmlab/measures.hpp"
#include "klmlab/model.hpp"
#include "test_util.hpp"

using namespace klmlab;
using namespace klmlab::liouville;
using testutil::max_abs;

namespace {

Matrix direct_rhs(const Matrix& h, const std::vector<Matrix>& lindblads,
                  const Matrix& rho) {
  const Complex i_unit(0.0, 1.0);
  Matrix out = -i_unit * (h * rho - rho * h);
  for (const Matrix& l : lindblads) {
    const Matrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

// single-qubit amplitude damping |1> -> |0| at rate gamma
Liouvillian damping_liouvillian(double gamma) {
  Matrix jump = Matrix::Zero(2, 2);
  jump(0, 1) = std::sqrt(gamma);
  return build_liouvillian(Matrix::Zero(2, 2), {jump});
}

}  // namespace

TEST_CASE("TimeGrid validation and spacing") {
  CHECK_THROWS_AS(TimeGrid(0.0, 10), ValidationError);
  CHECK_THROWS_AS(TimeGrid(-1.0, 10), ValidationError);
  CHECK_THROWS_AS(TimeGrid(1.0, 1), ValidationError);

  const TimeGrid grid(100.0, 11);
  CHECK(grid.dt() == doctest::Approx(10.0));
  CHECK(grid.time(0) == 0.0);
  CHECK(grid.time(10) == 100.0);
  CHECK(grid.times().size() == 11);
}

TEST_CASE("vectorization is column stacking") {
  std::mt19937 rng(53);
  const Matrix rho = testutil::random_matrix(4, 4, rng);
  const Vector v = vectorize(rho);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(v(i + 4 * j) == rho(i, j));
  CHECK(max_abs(unvectorize(v, 4) - rho) == 0.0);
  CHECK_THROWS_AS(unvectorize(Vector::Zero(5), 2), DimensionError);
}

TEST_CASE("build_liouvillian: shape, zero case, validation") {
  const Liouvillian zero = build_liouvillian(Matrix::Zero(9, 9), {});
  CHECK(zero.matrix.rows() == 81);
  CHECK(zero.matrix.cols() == 81);
  CHECK(max_abs(zero.matrix) == 0.0);
  CHECK(zero.hilbert_dim == 9);

  Matrix non_hermitian = Matrix::Zero(2, 2);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(build_liouvillian(non_hermitian, {}), ValidationError);
  CHECK_THROWS_AS(build_liouvillian(Matrix::Zero(2, 2), {Matrix::Zero(3, 3)}),
                  DimensionError);
}

TEST_CASE("Liouvillian action matches the master-equation right-hand side") {
  const model::SystemParams p;
  const Matrix h = model::build_full_hamiltonian(p);
  const auto lindblads = model::build_full_lindblads(p);
  const Liouvillian liou = build_liouvillian(h, lindblads);

  std::mt19937 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix rho = testutil::random_hermitian(9, rng);
    const Matrix via_super = unvectorize(liou.matrix * vectorize(rho), 9);
    const Matrix via_formula = direct_rhs(h, lindblads, rho);
    CHECK(max_abs(via_super - via_formula) < 1e-12 * std::max(1.0, max_abs(via_formula)));
    // the flow is trace preserving
    CHECK(std::abs(via_super.trace()) < 1e-10);
  }
}

TEST_CASE("propagate: frozen dynamics and analytic amplitude damping") {
  // L = 0 keeps the state constant
  const Liouvillian zero{Matrix::Zero(4, 4), 2};
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(0, 0) = 0.25;
  rho0(1, 1) = 0.75;
  const auto frozen = propagate(zero, DensityMatrix(rho0), TimeGrid(10.0, 5));
  for (const auto& state : frozen) CHECK(max_abs(state.matrix() - rho0) == 0.0);

  // excited population decays as exp(-gamma t)
  const double gamma = 0.31;
  const Liouvillian damping = damping_liouvillian(gamma);
  Matrix excited = Matrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const TimeGrid grid(8.0, 17);
  const auto states = propagate(damping, DensityMatrix(excited), grid);
  for (int j = 0; j < grid.n_points; ++j) {
    CHECK(states[j].matrix()(1, 1).real() ==
          doctest::Approx(std::exp(-gamma * grid.time(j))).epsilon(1e-10));
    CHECK(std::abs(states[j].matrix().trace() - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("propagate: semigroup property and positivity on the physical model") {
  const model::SystemParams p;
  const Liouvillian liou = build_liouvillian(model::build_full_hamiltonian(p),
                                             model::build_full_lindblads(p));
  const DensityMatrix rho0 = model::initial_mixed_state(0.3, 0.15, 0.45, 0.1);

  // same endpoint through different step sizes
  const auto coarse = propagate(liou, rho0, TimeGrid(200.0, 3));
  const auto fine = propagate(liou, rho0, TimeGrid(200.0, 9));
  CHECK(max_abs(coarse.back().matrix() - fine.back().matrix()) < 1e-9);

  for (const auto& state : fine) {
    const auto eig = linalg::eig_hermitian(state.matrix());
    CHECK(eig.values.minCoeff() > -1e-7);
    CHECK(std::abs(state.matrix().trace() - Complex(1.0, 0.0)) < 1e-8);
  }
}

TEST_CASE("propagate: trace drift raises a numerical failure") {
  // a non-trace-preserving generator, injected directly
  const Liouvillian leaky{Matrix::Identity(4, 4) * 0.1, 2};
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(0, 0) = 1.0;
  CHECK_THROWS_AS(propagate(leaky, DensityMatrix(rho0), TimeGrid(10.0, 5)),
                  NumericalError);
}

TEST_CASE("steady_state: dark state of amplitude damping") {
  const auto rho = steady_state(damping_liouvillian(0.42));
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK(max_abs(rho.matrix() - ground) < 1e-10);
}

TEST_CASE("steady_state: effective model stabilizes the weighted target") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> m_dist(0.3, 3.0);
  const double m = m_dist(rng);
  model::SystemParams p;
  p.m = m;
  p.omega_mw = 0.02;
  p.delta = m * 0.02;
  const Liouvillian liou = build_liouvillian(model::build_effective_hamiltonian(p),
                                             model::build_effective_lindblads(p));
  const DensityMatrix rho = steady_state(liou);

  const Vector target = model::klm_state(m);
  const Matrix diff = rho.matrix() - target * target.adjoint();
  const auto eig = linalg::eig_hermitian(diff);
  const double trace_distance = 0.5 * eig.values.cwiseAbs().sum();
  CHECK(trace_distance < 1e-6);

  // dark-state stationarity holds at machine precision
  CHECK((liou.matrix * vectorize(target * target.adjoint())).norm() < 1e-14);
}

TEST_CASE("steady_state: no dissipation means a degenerate null space") {
  model::SystemParams p;
  p.gamma = 0.0;
  const Liouvillian liou = build_liouvillian(model::build_full_hamiltonian(p),
                                             model::build_full_lindblads(p));
  CHECK_THROWS_AS(steady_state(liou), NonUniqueSteadyStateError);
  try {
    steady_state(liou);
  } catch (const NonUniqueSteadyStateError& e) {
    CHECK(e.dimension() >= 2);
  }
}

TEST_CASE("spectral_gap: analytic damping spectrum and degenerate zero") {
  const double gamma = 0.37;
  CHECK(spectral_gap(damping_liouvillian(gamma)) ==
        doctest::Approx(gamma / 2.0).epsilon(1e-12));

  const Liouvillian zero{Matrix::Zero(4, 4), 2};
  CHECK(spectral_gap(zero) == 0.0);
}

TEST_CASE("spectral_gap: physical model has a finite gap") {
  const model::SystemParams p;
  const Liouvillian liou = build_liouvillian(model::build_full_hamiltonian(p),
                                             model::build_full_lindblads(p));
  CHECK(spectral_gap(liou) > 0.0);
}
