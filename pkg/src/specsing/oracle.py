"""Brute-force reference: fixed-step RK4 integration of ``phi'' = (v - k^2) phi``.

Nothing here reuses the analytic layer propagators; only the potential
container is shared.  Step sizes are chosen per constant segment so that
every interface falls on a grid point and RK4 keeps its full fourth order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBasisError
from .scattering import (
    LocalSolution,
    PiecewisePotential,
    TransferMatrix,
    check_wavenumber,
    transfer_matrix,
)


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings; ``steps`` is spread over the potential's support."""

    steps: int = 100_000
    method: str = "rk4"

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.method != "rk4":
            raise ValueError(f"unsupported method {self.method!r}")


DEFAULT_CONFIG = IntegratorConfig()


def _rk4_segment(phi: complex, dphi: complex, c: complex, h: float, n: int):
    # phi'' = c * phi with c = v - k^2 constant over the segment.
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(n):
        a1 = dphi
        b1 = c * phi
        a2 = dphi + half * b1
        b2 = c * (phi + half * a1)
        a3 = dphi + half * b2
        b3 = c * (phi + half * a2)
        a4 = dphi + h * b3
        b4 = c * (phi + h * a3)
        phi += sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        dphi += sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
    return phi, dphi


def _rk4_segment_pair(p1, d1, p2, d2, c: complex, h: float, n: int):
    # Same scheme as _rk4_segment, two states per step to halve loop overhead.
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(n):
        a1 = d1
        b1 = c * p1
        a2 = d1 + half * b1
        b2 = c * (p1 + half * a1)
        a3 = d1 + half * b2
        b3 = c * (p1 + half * a2)
        a4 = d1 + h * b3
        b4 = c * (p1 + h * a3)
        p1 += sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        d1 += sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        a1 = d2
        b1 = c * p2
        a2 = d2 + half * b1
        b2 = c * (p2 + half * a1)
        a3 = d2 + half * b2
        b3 = c * (p2 + half * a2)
        a4 = d2 + h * b3
        b4 = c * (p2 + h * a3)
        p2 += sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        d2 += sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
    return p1, d1, p2, d2


def _segments(p: PiecewisePotential, x_from: float, x_to: float):
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    cuts = sorted({lo, hi, *(x for x in p.interfaces if lo < x < hi)})
    pieces = [(a, b, p(0.5 * (a + b))) for a, b in zip(cuts[:-1], cuts[1:])]
    if x_to < x_from:
        pieces = [(b, a, v) for a, b, v in reversed(pieces)]
    return pieces


def _grid(p: PiecewisePotential, x_from: float, x_to: float, cfg: IntegratorConfig):
    span = abs(x_to - x_from)
    length = p.support_length if p.support_length > 0.0 else span
    density = cfg.steps / length
    for a, b, v in _segments(p, x_from, x_to):
        n = max(1, math.ceil(abs(b - a) * density - 1e-9))
        yield v, (b - a) / n, n


def integrate(
    p: PiecewisePotential,
    k: float,
    init: LocalSolution,
    x_from: float,
    x_to: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> LocalSolution:
    """Carry ``(phi, phi')`` from ``x_from`` to ``x_to`` (either direction)."""
    phi, dphi = complex(init.phi), complex(init.dphi)
    if x_to == x_from:
        return LocalSolution(phi, dphi)
    k2 = k * k
    for v, h, n in _grid(p, x_from, x_to, cfg):
        phi, dphi = _rk4_segment(phi, dphi, v - k2, h, n)
    return LocalSolution(phi, dphi)


def integrate_pair(
    p: PiecewisePotential,
    k: float,
    first: LocalSolution,
    second: LocalSolution,
    x_from: float,
    x_to: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> tuple[LocalSolution, LocalSolution]:
    """Two independent solutions carried over the same grid."""
    state = (complex(first.phi), complex(first.dphi), complex(second.phi), complex(second.dphi))
    if x_to != x_from:
        k2 = k * k
        for v, h, n in _grid(p, x_from, x_to, cfg):
            state = _rk4_segment_pair(*state, v - k2, h, n)
    return LocalSolution(state[0], state[1]), LocalSolution(state[2], state[3])


def _plane_wave(x: float, k: float, sign: int) -> LocalSolution:
    e = cmath.exp(sign * 1j * k * x)
    return LocalSolution(e, sign * 1j * k * e)


def _coefficients(sol: LocalSolution, x: float, k: float) -> np.ndarray:
    basis = np.array(
        [
            [cmath.exp(1j * k * x), cmath.exp(-1j * k * x)],
            [1j * k * cmath.exp(1j * k * x), -1j * k * cmath.exp(-1j * k * x)],
        ]
    )
    if np.linalg.cond(basis) > 1e12:
        raise DegenerateBasisError(f"plane-wave basis ill-conditioned at k={k}")
    return np.linalg.solve(basis, np.array([sol.phi, sol.dphi]))


def transfer_matrix_numeric(
    p: PiecewisePotential, k: float, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> TransferMatrix:
    """Reconstruct ``M(k)`` by integrating both left plane waves across the support."""
    k = check_wavenumber(k)
    xl, xr = p.left_edge, p.right_edge
    outs = integrate_pair(p, k, _plane_wave(xl, k, +1), _plane_wave(xl, k, -1), xl, xr, cfg)
    cols = [_coefficients(out, xr, k) for out in outs]
    return TransferMatrix.from_array(np.column_stack(cols), k)


def transmissions_numeric(
    p: PiecewisePotential, k: float, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> tuple[complex, complex]:
    """Left and right transmission amplitudes from two separate integrations.

    The left one starts from a pure outgoing ``exp(ikx)`` on the right edge and
    integrates backwards; the right one starts from a pure ``exp(-ikx)`` on the
    left edge and integrates forwards.
    """
    k = check_wavenumber(k)
    xl, xr = p.left_edge, p.right_edge
    back = integrate(p, k, _plane_wave(xr, k, +1), xr, xl, cfg)
    t_left = 1.0 / _coefficients(back, xl, k)[0]
    fwd = integrate(p, k, _plane_wave(xl, k, -1), xl, xr, cfg)
    t_right = 1.0 / _coefficients(fwd, xr, k)[1]
    return complex(t_left), complex(t_right)


def entry_deviation(a: TransferMatrix, b: TransferMatrix) -> np.ndarray:
    """Entrywise ``|a - b| / max(|a|, 1)``; entries below unit size compare absolutely."""
    x, y = a.array, b.array
    return np.abs(x - y) / np.maximum(np.abs(x), 1.0)


def compare(p: PiecewisePotential, k: float, cfg: IntegratorConfig = DEFAULT_CONFIG) -> float:
    """Largest entrywise deviation between the analytic and integrated ``M(k)``."""
    return float(entry_deviation(transfer_matrix(p, k), transfer_matrix_numeric(p, k, cfg)).max())
