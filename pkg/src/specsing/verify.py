"""Self-checks of every module's invariants, grouped into suites.

Each check reports the measured value, the bound it is held to and whether it
passed.  The randomized checks draw from :mod:`specsing.sampling` with a fixed
seed so reports are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import oracle
from .barrier import BarrierParams, barrier_profile, m22_closed_form
from .sampling import random_cases
from .scattering import PiecewisePotential, amplitudes, transfer_matrix, wronskian
from .singularities import (
    barrier_family,
    count_minus_roots,
    find_generic,
    plus_branch_scan,
    singularity,
    solve_window,
)
from .waveguide import (
    HBAR_C_EV_NM,
    WaveguideSpec,
    effective_problem,
    energy_to_wavenumber,
    singular_design,
    wavenumber_to_energy,
)

SUITES = ("core", "barrier", "solver", "oracle", "waveguide")

# Reference singularities to eight or nine digits: n -> (r_n, y_n, a k_n, a^2 z_n).
REFERENCE_SINGULARITIES = {
    0: (2.64390700, 1.82765566, 1.06468255, 2.07173713),
    1: (9.11655393, 0.71364271, 4.31823693, 13.3074170),
    2: (15.4804556, 0.49008727, 7.52928304, 27.7830976),
    10: (65.8884385, 0.17167639, 32.8243878, 184.971084),
    100: (631.445619, 0.02901727, 315.689592, 2891.85852),
}


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _le(name: str, value: float, bound: float) -> Check:
    return Check(name, float(value), float(bound), bool(value <= bound))


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def scaled_det_error(m) -> float:
    """``|det M - 1|`` in units of the largest product entering the determinant."""
    return abs(m.det - 1.0) / max(1.0, abs(m.m11 * m.m22), abs(m.m12 * m.m21))


def barrier_case_grid(count: int = 200, seed: int = 7) -> list[tuple[BarrierParams, float]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a = rng.uniform(0.2, 3.0)
        z = rng.uniform(0.1, 20.0) * rng.choice([-1.0, 1.0])
        out.append((BarrierParams(a, z), rng.uniform(0.2, 10.0)))
    return out


def core_checks(count: int = 100) -> list[Check]:
    det_err = det_scaled = prod_err = sum_err = wr_err = split_err = 0.0
    for p, k in random_cases(count):
        m = transfer_matrix(p, k)
        amp = amplitudes(m)
        det_err = max(det_err, abs(m.det - 1.0))
        det_scaled = max(det_scaled, scaled_det_error(m))
        prod_err = max(prod_err, _rel(amp.s_plus * amp.s_minus, m.m11 / m.m22))
        sum_err = max(sum_err, _rel(amp.s_plus + amp.s_minus, 2.0 / m.m22))
        wr_err = max(wr_err, _rel(wronskian(m), -2j * k * m.m22))
        w0, v0 = p.layers[0]
        split = PiecewisePotential(p.left_edge, ((0.3 * w0, v0), (0.7 * w0, v0), *p.layers[1:]))
        ms = transfer_matrix(split, k)
        split_err = max(split_err, float(oracle.entry_deviation(m, ms).max()))
    unit_err = 0.0
    for p, k in random_cases(50, seed=11, real=True):
        amp = amplitudes(transfer_matrix(p, k))
        unit_err = max(
            unit_err,
            abs(amp.transmission + amp.reflection_left - 1.0),
            abs(amp.transmission + amp.reflection_right - 1.0),
        )
    return [
        _le("det M = 1 within 1e-10", det_err, 1e-10),
        _le("det M = 1 within 1e-13 of |M11 M22| (roundoff scale)", det_scaled, 1e-13),
        _le("s+ s- = M11/M22 within 1e-12 relative", prod_err, 1e-12),
        _le("s+ + s- = 2/M22 within 1e-12 relative", sum_err, 1e-12),
        _le("wronskian = -2ik M22 within 1e-12 relative", wr_err, 1e-12),
        _le("layer split leaves M unchanged within 1e-12", split_err, 1e-12),
        _le("real potentials: |t|^2 + |r|^2 = 1 within 1e-8", unit_err, 1e-8),
    ]


def barrier_checks() -> list[Check]:
    cf_err = pt_err = 0.0
    for params, k in barrier_case_grid():
        m = transfer_matrix(barrier_profile(params), k)
        cf_err = max(cf_err, _rel(m22_closed_form(params, k), m.m22))
        mirrored = m22_closed_form(BarrierParams(params.a, -params.z), k)
        pt_err = max(pt_err, _rel(mirrored, m.m22), _rel(mirrored, m.m11.conjugate()))
    return [
        _le("closed-form vs composition <= 1e-10", cf_err, 1e-10),
        _le("M22(-z) = M22(z) = conj M11(z) within 1e-12 relative", pt_err, 1e-12),
    ]


def solver_checks(n_max: int = 20) -> list[Check]:
    records = [singularity(n) for n in range(-n_max, n_max + 1)]
    worst_residual = max(r.residual for r in records)
    residual_100 = solve_window(100).residual
    table_err = 0.0
    for n, row in REFERENCE_SINGULARITIES.items():
        rec = solve_window(n)
        for got, want in zip((rec.r, rec.y, rec.ak, rec.a2z), row):
            table_err = max(table_err, abs(got - want) / abs(want))
    positive = [solve_window(n) for n in range(n_max + 1)]
    increasing = all(
        b.ak > a.ak and b.a2z > a.a2z for a, b in zip(positive[:-1], positive[1:])
    )
    roots = [count_minus_roots(n) for n in range(n_max + 1)]
    plus = plus_branch_scan(n_max)
    generic_err = 0.0
    for rec in positive[:6]:
        found = find_generic(barrier_family(), rec.ak * (1 + 1e-3), rec.a2z * (1 - 1e-3))
        generic_err = max(generic_err, abs(found.k - rec.ak) / rec.ak, abs(found.theta - rec.a2z) / rec.a2z)
    return [
        Check("|M22(k_n)| < 1e-9 for n <= 20", worst_residual, 1e-9, worst_residual < 1e-9),
        Check("|M22(k_100)| < 1e-9", residual_100, 1e-9, residual_100 < 1e-9),
        _le("reference singularities reproduced within 1e-6 relative", table_err, 1e-6),
        Check("exactly one minus-branch root per window", float(max(roots)), 1.0, roots == [1] * len(roots)),
        Check("a k_n and a^2 z_n strictly increasing", float(increasing), 1.0, increasing),
        Check(
            "plus branch has no root for n <= 20",
            min(w.min_abs_difference for w in plus),
            1e-6,
            not any(w.has_root for w in plus),
        ),
        _le("generic Newton agrees with window solve (n <= 5)", generic_err, 1e-6),
    ]


def convergence_order(steps=(40, 80, 160)) -> float:
    """Empirical RK4 order from three step counts on a smooth complex layer."""
    p = PiecewisePotential(0.0, ((1.0, 2.0 + 1.0j),))
    exact = transfer_matrix(p, 3.0).array
    errs = [
        np.abs(oracle.transfer_matrix_numeric(p, 3.0, oracle.IntegratorConfig(n)).array - exact).max()
        for n in steps
    ]
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)]
    return float(np.mean(orders))


def oracle_checks(count: int = 100) -> list[Check]:
    dev = det_err = det_scaled = t_err = 0.0
    fast = oracle.IntegratorConfig(20_000)
    for p, k in random_cases(count):
        numeric = oracle.transfer_matrix_numeric(p, k)
        dev = max(dev, float(oracle.entry_deviation(transfer_matrix(p, k), numeric).max()))
        det_err = max(det_err, abs(numeric.det - 1.0))
        det_scaled = max(det_scaled, scaled_det_error(numeric))
        t_left, t_right = oracle.transmissions_numeric(p, k, fast)
        t_err = max(t_err, abs(t_left - t_right) / max(abs(t_left), 1.0))
    order = convergence_order()
    return [
        _le("analytic vs RK4 transfer matrix <= 1e-6", dev, 1e-6),
        _le("oracle det M = 1 within 1e-8", det_err, 1e-8),
        _le("oracle det M = 1 within 1e-11 of |M11 M22| (roundoff scale)", det_scaled, 1e-11),
        _le("oracle left/right transmission agree within 1e-8", t_err, 1e-8),
        Check("RK4 empirical order in [3.7, 4.3]", order, 4.3, 3.7 <= order <= 4.3),
    ]


def waveguide_checks() -> list[Check]:
    design = singular_design(0, 1, WaveguideSpec(1.0, 1.0).s, omega=5.0)
    spec = design.spec(0.2, 1.25)
    potential, kappa = effective_problem(spec, design.omega_nm)
    rec = singularity(0)
    landed = max(
        abs(kappa * spec.alpha - rec.ak) / rec.ak,
        abs(potential.layers[0][1].imag * spec.alpha**2 - rec.a2z) / rec.a2z,
    )
    m22 = abs(transfer_matrix(potential, kappa).m22)
    roundtrip = max(
        abs(wavenumber_to_energy(energy_to_wavenumber(e)) - e) / e for e in (0.1, 1.0, 5.0, 123.4)
    )
    return [
        _le("design alpha = 1004.17 nm within 0.1%", abs(design.alpha / 1004.17 - 1), 1e-3),
        _le("design beta = 62.0464 nm within 0.1%", abs(design.beta / 62.0464 - 1), 1e-3),
        _le("design s = (hbar c)^2 z_0 / hbar omega = 0.016 eV within 0.1%", abs(design.s_nm / 0.016 - 1), 1e-3),
        _le("design lands on (a k_0, a^2 z_0) within 1e-6", landed, 1e-6),
        Check("|M22| at design < 1e-6", m22, 1e-6, m22 < 1e-6),
        _le("energy/wavenumber round trip within 1e-12", roundtrip, 1e-12),
        _le("hbar c constant", abs(HBAR_C_EV_NM - 197.3269804), 0.0),
    ]


_RUNNERS: dict[str, Callable[[], list[Check]]] = {
    "core": core_checks,
    "barrier": barrier_checks,
    "solver": solver_checks,
    "oracle": oracle_checks,
    "waveguide": waveguide_checks,
}


def run_suite(suite: str) -> list[Check]:
    """Run one suite, or every suite for ``"all"``."""
    if suite == "all":
        return [c for name in SUITES for c in _RUNNERS[name]()]
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    return _RUNNERS[suite]()
