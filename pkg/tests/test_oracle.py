import cmath

import numpy as np
import pytest

from specsing import oracle
from specsing.barrier import BarrierParams, barrier_profile
from specsing.errors import DegenerateBasisError
from specsing.scattering import LocalSolution, PiecewisePotential, layer_matrix, transfer_matrix
from specsing.singularities import solve_window
from specsing.verify import convergence_order


def test_free_propagation_is_plane_wave():
    k, x0, x1 = 2.0, -1.0, 1.5
    p = PiecewisePotential(x0, ((x1 - x0, 0.0),))
    start = LocalSolution(cmath.exp(1j * k * x0), 1j * k * cmath.exp(1j * k * x0))
    end = oracle.integrate(p, k, start, x0, x1)
    assert abs(end.phi - cmath.exp(1j * k * x1)) < 1e-10
    assert abs(end.dphi - 1j * k * cmath.exp(1j * k * x1)) < 1e-10


def test_backward_integration_inverts_forward():
    p = PiecewisePotential(0.0, ((1.0, 3 - 1j), (0.5, 2j)))
    cfg = oracle.IntegratorConfig(20_000)
    fwd = oracle.integrate(p, 1.2, LocalSolution(1.0, 0.3j), 0.0, 1.5, cfg)
    back = oracle.integrate(p, 1.2, fwd, 1.5, 0.0, cfg)
    assert abs(back.phi - 1.0) < 1e-12 and abs(back.dphi - 0.3j) < 1e-12


def test_constant_layer_matches_propagator():
    p = PiecewisePotential(0.0, ((1.0, 2j),))
    cfg = oracle.IntegratorConfig(20_000)
    cols = oracle.integrate_pair(p, 1.0, LocalSolution(1, 0), LocalSolution(0, 1), 0.0, 1.0, cfg)
    numeric = np.array([[cols[0].phi, cols[1].phi], [cols[0].dphi, cols[1].dphi]])
    np.testing.assert_allclose(numeric, layer_matrix(1.0, 2j, 1.0), atol=1e-10)


def test_halving_the_step_divides_error_by_sixteen():
    p = PiecewisePotential(0.0, ((1.0, 2 + 1j),))
    exact = transfer_matrix(p, 3.0).array
    e1 = np.abs(oracle.transfer_matrix_numeric(p, 3.0, oracle.IntegratorConfig(50)).array - exact).max()
    e2 = np.abs(oracle.transfer_matrix_numeric(p, 3.0, oracle.IntegratorConfig(100)).array - exact).max()
    assert 12 < e1 / e2 < 20


def test_convergence_order_is_four():
    assert 3.7 <= convergence_order() <= 4.3


def test_empty_potential_gives_identity():
    m = oracle.transfer_matrix_numeric(PiecewisePotential.free(), 1.3)
    np.testing.assert_allclose(m.array, np.eye(2), atol=1e-14)


def test_first_barrier_singularity():
    rec = solve_window(0)
    p = barrier_profile(BarrierParams(1.0, rec.a2z))
    assert oracle.compare(p, rec.ak) <= 1e-6
    assert abs(oracle.transfer_matrix_numeric(p, rec.ak).m22) < 1e-7


@pytest.mark.slow
def test_stiff_high_order_singularity():
    rec = solve_window(100)
    p = barrier_profile(BarrierParams(1.0, rec.a2z))
    assert oracle.compare(p, rec.ak, oracle.IntegratorConfig(1_000_000)) <= 1e-4


def test_transmissions_agree_left_and_right():
    p = PiecewisePotential(-0.5, ((0.7, 4 + 3j), (0.6, -2j), (0.2, 1.0)))
    t_left, t_right = oracle.transmissions_numeric(p, 1.6, oracle.IntegratorConfig(20_000))
    assert abs(t_left - t_right) < 1e-8
    assert t_left == pytest.approx(1 / transfer_matrix(p, 1.6).m22, rel=1e-8)


def test_degenerate_basis_is_reported():
    with pytest.raises(DegenerateBasisError):
        oracle._coefficients(LocalSolution(1.0, 0.0), 0.0, 1e-13)


def test_entry_deviation_floor():
    a = oracle.TransferMatrix(1e-3, 100.0, 1.0, 1.0, 1.0)
    b = oracle.TransferMatrix(2e-3, 101.0, 1.0, 1.0, 1.0)
    np.testing.assert_allclose(oracle.entry_deviation(a, b), [[1e-3, 0.01], [0, 0]])


@pytest.mark.parametrize("steps, method", [(0, "rk4"), (10, "euler")])
def test_config_validation(steps, method):
    with pytest.raises(ValueError):
        oracle.IntegratorConfig(steps, method)
