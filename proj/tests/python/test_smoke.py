import numpy as np
import pytest

import klmlab


def test_version():
    assert klmlab.__version__


def test_full_hamiltonian_shape_and_hermiticity():
    h = klmlab.build_full_hamiltonian(klmlab.SystemParams())
    assert h.shape == (9, 9)
    assert np.allclose(h, h.conj().T)
    assert h[7, 1] == 1.0  # <r1|H|01> is the drive Rabi frequency


def test_klm_state_negativity():
    for m in (0.0, 1.0, 2.0):
        rho = klmlab.DensityMatrix.pure(klmlab.klm_state(m))
        assert klmlab.negativity(rho, 3, 3) == pytest.approx(1.0 / (2.0 + m * m), abs=1e-10)


def test_dark_state_condition():
    p = klmlab.SystemParams()
    p.m = 2.0
    p.omega_mw = 0.02
    p.delta = 0.04
    h = klmlab.build_effective_hamiltonian(p)
    assert np.linalg.norm(h @ klmlab.klm_state(2.0)) < 1e-12
    for op in klmlab.build_effective_lindblads(p):
        assert np.linalg.norm(op @ klmlab.klm_state(2.0)) == 0.0


def test_steady_state_reaches_target():
    liou = klmlab.build_model_liouvillian(klmlab.SystemParams(), "full")
    rho = klmlab.steady_state(liou)
    assert klmlab.fidelity_to_pure(rho, klmlab.klm_state(1.0)) > 0.99
    assert klmlab.spectral_gap(liou) > 0.0


def test_propagation_preserves_trace():
    liou = klmlab.build_model_liouvillian(klmlab.SystemParams(), "effective")
    rho0 = klmlab.initial_mixed_state(0.3, 0.15, 0.45, 0.1)
    states = klmlab.propagate(liou, rho0, klmlab.TimeGrid(200.0, 11))
    assert len(states) == 11
    for state in states:
        assert abs(np.trace(state.matrix) - 1.0) < 1e-10


def test_gamma_zero_steady_state_is_degenerate():
    p = klmlab.SystemParams()
    p.gamma = 0.0
    liou = klmlab.build_model_liouvillian(p, "full")
    with pytest.raises(klmlab.NonUniqueSteadyStateError):
        klmlab.steady_state(liou)


def test_unit_conversion():
    params = klmlab.convert_units(klmlab.physical_set2())
    assert params.Delta == pytest.approx(45.0)
    assert params.gamma == pytest.approx(2.0 * np.pi * 0.1 / 20.0)


def test_fig2_table_schema():
    table = klmlab.fig2_table(klmlab.SystemParams(), grid=klmlab.TimeGrid(50.0, 5))
    assert table["columns"] == [
        "omega_t", "negativity", "purity", "pop_E1", "pop_E2", "pop_E3", "pop_E4",
    ]
    assert len(table["rows"]) == 5
    assert table["rows"][0][0] == 0.0
