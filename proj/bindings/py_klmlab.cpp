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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "klmlab/errors.hpp"
#include "klmlab/experiments.hpp"
#include "klmlab/version.hpp"

namespace py = pybind11;
using namespace klmlab;

namespace {

experiments::ModelKind kind_from_string(const std::string& s) {
  return experiments::parse_model_kind(s);
}

liouville::Liouvillian build_model_liouvillian(const model::SystemParams& p,
                                               const std::string& kind) {
  if (kind_from_string(kind) == experiments::ModelKind::Full) {
    return liouville::build_liouvillian(model::build_full_hamiltonian(p),
                                        model::build_full_lindblads(p));
  }
  return liouville::build_liouvillian(model::build_effective_hamiltonian(p),
                                      model::build_effective_lindblads(p));
}

py::dict table_to_dict(const Table& t) {
  py::list columns;
  for (const auto& c : t.columns) columns.append(c);
  py::list rows;
  for (const auto& row : t.rows) {
    py::list r;
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell)) {
        r.append(std::get<double>(cell));
      } else {
        r.append(std::get<std::string>(cell));
      }
    }
    rows.append(r);
  }
  py::dict d;
  d["columns"] = columns;
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(klmlab, mod) {
  mod.doc() = "Two-atom Rydberg master-equation simulator: dissipative preparation "
              "of bipartite KLM states, with full/effective Lindblad dynamics, "
              "steady states and entanglement diagnostics.";
  mod.attr("__version__") = kVersion;

  py::register_exception<DimensionError>(mod, "DimensionError", PyExc_ValueError);
  py::register_exception<ValidationError>(mod, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_RuntimeError);
  py::register_exception<NonUniqueSteadyStateError>(mod, "NonUniqueSteadyStateError",
                                                    PyExc_RuntimeError);

  // ---- linalg ----
  mod.def("tensor", &linalg::tensor, py::arg("a"), py::arg("b"),
          "Kronecker product with atom-1-major composite indexing.");
  mod.def(
      "partial_transpose",
      [](const Matrix& rho, int dim_a, int dim_b, const std::string& subsystem) {
        if (subsystem != "A" && subsystem != "B") {
          throw ValidationError("subsystem must be 'A' or 'B'");
        }
        return linalg::partial_transpose(
            rho, dim_a, dim_b,
            subsystem == "A" ? linalg::Subsystem::A : linalg::Subsystem::B);
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("subsystem") = "A");
  mod.def("trace_norm", &linalg::trace_norm, py::arg("a"));
  mod.def("matrix_sqrt", &linalg::matrix_sqrt, py::arg("a"));
  mod.def("expm", &linalg::expm, py::arg("a"));
  mod.def("null_space", &linalg::null_space, py::arg("a"),
          py::arg("tol") = linalg::kNullSpaceTol);
  mod.def(
      "eig_hermitian",
      [](const Matrix& a) {
        const linalg::HermitianEig eig = linalg::eig_hermitian(a);
        return py::make_tuple(eig.values, eig.vectors);
      },
      py::arg("a"), "Ascending eigenvalues and matching eigenvector columns.");

  py::class_<DensityMatrix>(mod, "DensityMatrix")
      .def(py::init<Matrix>(), py::arg("rho"))
      .def_static("pure", &DensityMatrix::pure, py::arg("psi"))
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dim", &DensityMatrix::dim);

  // ---- model ----
  py::class_<model::SystemParams>(mod, "SystemParams")
      .def(py::init<>())
      .def_readwrite("omega_drive", &model::SystemParams::omega_drive)
      .def_readwrite("Delta", &model::SystemParams::Delta)
      .def_readwrite("delta", &model::SystemParams::delta)
      .def_readwrite("omega_mw", &model::SystemParams::omega_mw)
      .def_readwrite("gamma", &model::SystemParams::gamma)
      .def_readwrite("u_rr", &model::SystemParams::u_rr)
      .def_readwrite("m", &model::SystemParams::m)
      .def("__repr__", [](const model::SystemParams& p) {
        return "SystemParams(Delta=" + std::to_string(p.Delta) +
               ", delta=" + std::to_string(p.delta) +
               ", omega_mw=" + std::to_string(p.omega_mw) +
               ", gamma=" + std::to_string(p.gamma) +
               ", u_rr=" + std::to_string(p.u_rr) + ", m=" + std::to_string(p.m) + ")";
      });

  mod.def("antiblockade_urr", &model::antiblockade_urr, py::arg("Delta"));
  mod.def("with_antiblockade", &model::with_antiblockade, py::arg("params"));
  mod.def("build_full_hamiltonian", &model::build_full_hamiltonian, py::arg("params"));
  mod.def("build_full_lindblads", &model::build_full_lindblads, py::arg("params"));
  mod.def("build_effective_hamiltonian", &model::build_effective_hamiltonian,
          py::arg("params"));
  mod.def("build_effective_lindblads", &model::build_effective_lindblads,
          py::arg("params"));
  mod.def("klm_state", &model::klm_state, py::arg("m"));
  mod.def("complement_states", &model::complement_states, py::arg("m"));
  mod.def("initial_mixed_state", &model::initial_mixed_state, py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("d"),
          "Diagonal mixture a|00><00| + b|11><11| + c|10><10| + d|01><01|.");
  mod.def(
      "basis_ket",
      [](const std::string& label) {
        return model::basis_ket(model::BasisLabel::parse(label));
      },
      py::arg("label"), "Product basis ket from a two-character label like '00' or 'r1'.");

  // ---- liouville ----
  py::class_<liouville::Liouvillian>(mod, "Liouvillian")
      .def_readonly("matrix", &liouville::Liouvillian::matrix)
      .def_readonly("hilbert_dim", &liouville::Liouvillian::hilbert_dim);

  py::class_<liouville::TimeGrid>(mod, "TimeGrid")
      .def(py::init<double, int>(), py::arg("t_max"), py::arg("n_points"))
      .def_readonly("t_max", &liouville::TimeGrid::t_max)
      .def_readonly("n_points", &liouville::TimeGrid::n_points)
      .def("times", &liouville::TimeGrid::times);

  mod.def("build_liouvillian", &liouville::build_liouvillian, py::arg("hamiltonian"),
          py::arg("lindblads"));
  mod.def("build_model_liouvillian", &build_model_liouvillian, py::arg("params"),
          py::arg("model") = "full",
          "Liouvillian of the full or effective master equation for one parameter set.");
  mod.def("propagate", &liouville::propagate, py::arg("liouvillian"), py::arg("rho0"),
          py::arg("grid"));
  mod.def("steady_state", &liouville::steady_state, py::arg("liouvillian"));
  mod.def("spectral_gap", &liouville::spectral_gap, py::arg("liouvillian"));
  mod.def("vectorize", &liouville::vectorize, py::arg("rho"));
  mod.def("unvectorize", &liouville::unvectorize, py::arg("v"), py::arg("dim"));

  // ---- measures ----
  mod.def("negativity", &measures::negativity, py::arg("rho"), py::arg("dim_a") = 3,
          py::arg("dim_b") = 3);
  mod.def("purity", &measures::purity, py::arg("rho"));
  mod.def("population", &measures::population, py::arg("rho"), py::arg("psi"));
  mod.def("fidelity", &measures::fidelity, py::arg("rho"), py::arg("target"));
  mod.def("fidelity_to_pure", &measures::fidelity_to_pure, py::arg("rho"), py::arg("psi"));

  // ---- experiments ----
  py::class_<experiments::PhysicalParams>(mod, "PhysicalParams")
      .def(py::init([](double omega_mhz, double delta_big_mhz, double gamma_mhz,
                       bool bare_is_angular) {
             return experiments::PhysicalParams{omega_mhz, delta_big_mhz, gamma_mhz,
                                                bare_is_angular};
           }),
           py::arg("omega_mhz"), py::arg("delta_big_mhz"), py::arg("gamma_mhz"),
           py::arg("bare_is_angular") = true)
      .def_readwrite("omega_mhz", &experiments::PhysicalParams::omega_mhz)
      .def_readwrite("delta_big_mhz", &experiments::PhysicalParams::delta_big_mhz)
      .def_readwrite("gamma_mhz", &experiments::PhysicalParams::gamma_mhz)
      .def_readwrite("bare_is_angular", &experiments::PhysicalParams::bare_is_angular);

  mod.def("convert_units", &experiments::convert_units, py::arg("physical"));
  mod.def("physical_set1", &experiments::physical_set1, py::arg("bare_is_angular") = true);
  mod.def("physical_set2", &experiments::physical_set2, py::arg("bare_is_angular") = true);

  py::class_<experiments::ModelComparison>(mod, "ModelComparison")
      .def_readonly("times", &experiments::ModelComparison::times)
      .def_readonly("populations_full", &experiments::ModelComparison::populations_full)
      .def_readonly("populations_effective",
                    &experiments::ModelComparison::populations_effective)
      .def_readonly("max_deviation", &experiments::ModelComparison::max_deviation);

  mod.def("compare_full_effective", &experiments::compare_full_effective,
          py::arg("params"), py::arg("rho0"), py::arg("grid"));

  mod.def(
      "run_general_klm",
      [](const std::vector<double>& m_values, const model::SystemParams& params,
         const liouville::TimeGrid& grid, const std::string& init,
         const std::string& kind, int jobs) {
        py::list out;
        for (const auto& series : experiments::run_general_klm(
                 m_values, params, grid, experiments::InitialState::parse(init),
                 kind_from_string(kind), jobs)) {
          py::dict d;
          d["m"] = series.m;
          d["times"] = series.times;
          d["fidelity"] = series.fidelity;
          out.append(d);
        }
        return out;
      },
      py::arg("m_values"), py::arg("params"), py::arg("grid"),
      py::arg("init") = "pure:00", py::arg("model") = "full", py::arg("jobs") = 1);

  mod.def(
      "fig2_table",
      [](const model::SystemParams& p, const std::string& init,
         const liouville::TimeGrid& grid, const std::string& kind, int jobs) {
        return table_to_dict(experiments::fig2_table(
            p, experiments::InitialState::parse(init), grid, kind_from_string(kind), jobs));
      },
      py::arg("params"), py::arg("init") = "diag:0.3,0.15,0.45,0.1",
      py::arg("grid") = liouville::TimeGrid(5000.0, 500), py::arg("model") = "full",
      py::arg("jobs") = 1);
  mod.def(
      "fig3a_table",
      [](const model::SystemParams& p, const std::vector<double>& deltas,
         const std::string& init, const liouville::TimeGrid& grid,
         const std::string& kind, int jobs) {
        return table_to_dict(experiments::fig3a_table(
            p, deltas, experiments::InitialState::parse(init), grid,
            kind_from_string(kind), jobs));
      },
      py::arg("params"), py::arg("Delta_values") = experiments::kFig3aDeltas,
      py::arg("init") = "diag:0.3,0.15,0.45,0.1",
      py::arg("grid") = liouville::TimeGrid(5000.0, 500), py::arg("model") = "full",
      py::arg("jobs") = 1);
  mod.def(
      "fig3b_table",
      [](const model::SystemParams& p, const std::vector<double>& gammas,
         const std::vector<double>& deltas, const std::string& kind, int jobs) {
        return table_to_dict(
            experiments::fig3b_table(p, gammas, deltas, kind_from_string(kind), jobs));
      },
      py::arg("params"), py::arg("gamma_values") = experiments::fig3b_default_gammas(),
      py::arg("delta_values") = experiments::fig3b_default_deltas(),
      py::arg("model") = "full", py::arg("jobs") = 1);
  mod.def(
      "fig4_table",
      [](double delta, const std::string& init, const liouville::TimeGrid& grid,
         bool bare_is_angular, const std::string& kind, int jobs) {
        return table_to_dict(experiments::fig4_table(
            experiments::physical_set1(bare_is_angular),
            experiments::physical_set2(bare_is_angular), delta,
            experiments::InitialState::parse(init), grid, kind_from_string(kind), jobs));
      },
      py::arg("delta") = 0.02, py::arg("init") = "pure:00",
      py::arg("grid") = liouville::TimeGrid(3e4, 500), py::arg("bare_is_angular") = true,
      py::arg("model") = "full", py::arg("jobs") = 1);
  mod.def(
      "fig5_table",
      [](const model::SystemParams& p, const std::vector<double>& m_values,
         const std::string& init, const liouville::TimeGrid& grid,
         const std::string& kind, int jobs) {
        return table_to_dict(experiments::fig5_table(
            p, m_values, experiments::InitialState::parse(init), grid,
            kind_from_string(kind), jobs));
      },
      py::arg("params"), py::arg("m_values") = experiments::kFig5Weights,
      py::arg("init") = "pure:00", py::arg("grid") = liouville::TimeGrid(5e4, 500),
      py::arg("model") = "full", py::arg("jobs") = 1);
}
