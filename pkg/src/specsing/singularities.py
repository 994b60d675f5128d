"""Location of spectral singularities.

Two independent routes are provided:

* the transcendental reduction for the PT-symmetric barrier, where every
  singularity corresponds to a root ``r_n`` of ``q_-(r) = q~_-(r)`` inside the
  window ``|r - (2n+1) pi| <= pi/6``;
* a damped two-dimensional Newton search on ``(Re M22, Im M22)(k, theta) = 0``
  for an arbitrary one-parameter family of piecewise potentials.

All barrier quantities are reported in scaled form (``ak`` and ``a^2 z``), so
they hold for any half-width ``a``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Literal, NamedTuple

import numpy as np
from scipy.optimize import brentq

from .barrier import BarrierParams, barrier_profile, m22_closed_form
from .errors import (
    DomainError,
    InvalidWavenumberError,
    LeftDomainError,
    NoRootError,
    NoSingularityFoundError,
)
from .scattering import K_MIN, PiecewisePotential, transfer_matrix

Branch = Literal["+", "-"]

WINDOW_HALF_WIDTH = math.pi / 6.0
WINDOW_INSET = 1e-9


class ChainValues(NamedTuple):
    q: float
    y: float
    q_tilde: float


@dataclass(frozen=True)
class SingularityRecord:
    """One spectral singularity of the barrier in scaled variables.

    ``residual`` is ``|M22|`` evaluated at ``(ak, a^2 z)`` with ``a = 1``.
    """

    n: int
    r: float
    y: float
    ak: float
    a2z: float
    residual: float


@dataclass(frozen=True)
class PlusBranchWindow:
    n: int
    min_abs_difference: float
    sign_changes: int

    @property
    def has_root(self) -> bool:
        return self.sign_changes > 0 or self.min_abs_difference < 1e-6


@dataclass(frozen=True)
class GenericSingularity:
    k: float
    theta: float
    residual: float
    iterations: int


def window_bounds(n: int, inset: float = WINDOW_INSET) -> tuple[float, float]:
    """Admissible ``r`` interval around ``(2n+1) pi``, shrunk by ``inset`` at both ends."""
    centre = (2 * n + 1) * math.pi
    return centre - WINDOW_HALF_WIDTH + inset, centre + WINDOW_HALF_WIDTH - inset


def cosh_q_branches(r: float) -> tuple[float, float]:
    """Both roots ``(plus, minus)`` of the quadratic for ``cosh q``.

    The minus root is ``inf`` at exact odd multiples of pi, where ``cot r csc r``
    blows up; the plus root stays finite there.

    Raises
    ------
    DomainError
        If ``cos 2r < 1/2`` (complex roots) or ``cos r >= 0``.
    """
    disc = 2.0 * math.cos(2.0 * r) - 1.0
    if disc < 0.0 or math.cos(r) >= 0.0:
        raise DomainError(f"r = {r} lies outside every admissible window")
    root = math.sqrt(disc)
    # (root - 1) = -4 sin^2 r / (root + 1) removes the 0/0 at the window centre.
    plus = -2.0 * math.cos(r) / (root + 1.0)
    s = math.sin(r)
    if s == 0.0:
        return plus, math.inf
    return plus, -0.5 * math.cos(r) / (s * s) * (root + 1.0)


def chain_functions(r: float, branch: Branch = "-") -> ChainValues:
    """Evaluate ``q_pm(r)``, ``y_pm(r)`` and ``q~_pm(r)`` for one branch."""
    plus, minus = cosh_q_branches(r)
    c = plus if branch == "+" else minus
    # c >= 1 analytically; clip roundoff below 1 at the window edges.
    q = math.acosh(max(c, 1.0))
    denom = abs(math.sin(r) * math.sinh(q))
    sign = math.copysign(1.0, math.sin(r))
    if denom == 0.0:
        return ChainValues(q, math.inf, r * sign)
    y = 2.0 / denom
    q_tilde = r * sign * y / (math.hypot(1.0, y) + 1.0)
    return ChainValues(q, y, q_tilde)


def _difference(r: float, branch: Branch) -> float:
    q, _, q_tilde = chain_functions(r, branch)
    return q - q_tilde


def _half_windows(n: int) -> list[tuple[float, float]]:
    # q~ jumps where sin r changes sign, so each half is scanned on its own.
    lo, hi = window_bounds(n)
    centre = (2 * n + 1) * math.pi
    gap = 1e-9 * max(1.0, abs(centre))
    return [(lo, centre - gap), (centre + gap, hi)]


def _sign_change_brackets(f: Callable[[float], float], lo: float, hi: float, points: int):
    rs = np.linspace(lo, hi, points)
    vals = np.array([f(r) for r in rs])
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    return [(rs[i], rs[i + 1]) for i in idx], vals


def scaled_wavenumber_of_r(r: float) -> float:
    """``g(r) = r / sqrt(2 (sqrt(y_-(r)^2 + 1) + 1))``; odd in ``r``."""
    y = chain_functions(r, "-").y
    return r / math.sqrt(2.0 * (math.hypot(1.0, y) + 1.0))


def scaled_strength_of_r(r: float) -> float:
    """``a^2 z = g(r)^2 sgn(sin r) y_-(r)``; odd in ``r``."""
    y = chain_functions(r, "-").y
    g = r / math.sqrt(2.0 * (math.hypot(1.0, y) + 1.0))
    return g * g * math.copysign(1.0, math.sin(r)) * y


def barrier_residual(ak: float, a2z: float) -> float:
    """``|M22|`` of the unit-half-width barrier with strength ``a2z`` at ``k = |ak|``."""
    return abs(m22_closed_form(BarrierParams(1.0, a2z), abs(ak)))


def solve_window(n: int, xtol: float = 1e-12, grid: int = 64) -> SingularityRecord:
    """Spectral singularity belonging to window ``n >= 0``.

    Raises
    ------
    NoRootError
        If ``q_-(r) - q~_-(r)`` has no sign change inside the window.
    """
    if n < 0:
        raise ValueError(f"window index must be >= 0, got {n}; use singularity() for n < 0")
    f = lambda r: _difference(r, "-")  # noqa: E731
    brackets = []
    for lo, hi in _half_windows(n):
        brackets.extend(_sign_change_brackets(f, lo, hi, grid)[0])
    if not brackets:
        raise NoRootError(f"no sign change of q_- - q~_- in window n = {n}")
    a, b = brackets[0]
    r = brentq(f, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    y = chain_functions(r, "-").y
    ak = scaled_wavenumber_of_r(r)
    a2z = scaled_strength_of_r(r)
    return SingularityRecord(n=n, r=r, y=y, ak=ak, a2z=a2z, residual=barrier_residual(ak, a2z))


def extend_negative(rec: SingularityRecord) -> SingularityRecord:
    """Mirror record using ``k_{-n} = -k_{n+1}`` and ``z_{-n} = -z_{n+1}``.

    Maps index ``m`` to ``1 - m``, so applying it twice is the identity. The
    residual is re-evaluated at ``|k|`` with the flipped strength.
    """
    if rec.n in (0, 1):
        raise ValueError("mirror rule applies to indices n >= 2 (giving -n+1 <= -1) or n <= -1")
    ak, a2z = -rec.ak, -rec.a2z
    return SingularityRecord(
        n=1 - rec.n,
        r=-rec.r,
        y=-rec.y,
        ak=ak,
        a2z=a2z,
        residual=barrier_residual(ak, a2z),
    )


@functools.lru_cache(maxsize=256)
def singularity(n: int) -> SingularityRecord:
    """Record for any integer index, negative ones through the mirror rule."""
    if n >= 0:
        return solve_window(n)
    return extend_negative(solve_window(1 - n))


def plus_branch_scan(n_max: int, points: int = 1000) -> list[PlusBranchWindow]:
    """Scan ``q_+(r) - q~_+(r)`` over every window ``0..n_max``.

    Each window is sampled on ``points`` points split over its two continuous
    halves; a sign change or a value below ``1e-6`` would indicate a root.
    """
    report = []
    for n in range(n_max + 1):
        f = lambda r: _difference(r, "+")  # noqa: E731
        changes = 0
        min_abs = math.inf
        for lo, hi in _half_windows(n):
            brackets, vals = _sign_change_brackets(f, lo, hi, points // 2)
            changes += len(brackets)
            min_abs = min(min_abs, float(np.min(np.abs(vals))))
        report.append(PlusBranchWindow(n=n, min_abs_difference=min_abs, sign_changes=changes))
    return report


def count_minus_roots(n: int, points: int = 4000) -> int:
    """Number of sign changes of ``q_-(r) - q~_-(r)`` in window ``n``."""
    f = lambda r: _difference(r, "-")  # noqa: E731
    return sum(len(_sign_change_brackets(f, lo, hi, points // 2)[0]) for lo, hi in _half_windows(n))


def barrier_family(a: float = 1.0) -> Callable[[float], PiecewisePotential]:
    """Family ``theta -> barrier`` with ``theta = a^2 z``."""

    def family(theta: float) -> PiecewisePotential:
        return barrier_profile(BarrierParams(a, theta / (a * a)))

    return family


def find_generic(
    family: Callable[[float], PiecewisePotential],
    k0: float,
    theta0: float,
    tol: float = 1e-10,
    max_iter: int = 50,
    rel_step: float = 1e-7,
) -> GenericSingularity:
    """Damped Newton search for a real zero of ``M22(k; family(theta))``.

    The Jacobian is built from central differences with step
    ``rel_step * max(|x|, 1)`` per coordinate. A Newton step is halved until
    ``|M22|`` decreases; if no halving helps the search is declared failed.

    Raises
    ------
    NoSingularityFoundError
        No convergence within ``max_iter`` iterations or no descent possible.
    LeftDomainError
        The iteration was driven to ``k <= 0``.
    """
    if k0 <= 0.0:
        raise InvalidWavenumberError(f"seed k0 must be positive, got {k0}")

    def residual(x: np.ndarray) -> np.ndarray:
        # Far from any root the entries can overflow; report that as non-finite.
        try:
            m22 = transfer_matrix(family(x[1]), x[0]).m22
        except OverflowError:
            return np.array([math.inf, math.inf])
        return np.array([m22.real, m22.imag])

    x = np.array([k0, theta0], dtype=float)
    fx = residual(x)
    norm = math.hypot(*fx)
    for it in range(max_iter + 1):
        if norm < tol:
            return GenericSingularity(k=float(x[0]), theta=float(x[1]), residual=norm, iterations=it)
        if it == max_iter:
            break
        jac = np.empty((2, 2))
        if x[0] <= rel_step * max(abs(x[0]), 1.0) + K_MIN:
            raise LeftDomainError(f"Newton iterate reached k={x[0]:.3e}, at the edge of k > 0")
        for j in range(2):
            h = rel_step * max(abs(x[j]), 1.0)
            e = np.zeros(2)
            e[j] = h
            jac[:, j] = (residual(x + e) - residual(x - e)) / (2.0 * h)
        if not np.all(np.isfinite(jac)):
            raise NoSingularityFoundError(f"Jacobian overflowed at k={x[0]}, theta={x[1]}")
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            raise NoSingularityFoundError(f"singular Jacobian at k={x[0]}, theta={x[1]}") from None
        lam = 1.0
        left_domain = False
        for _ in range(40):
            trial = x + lam * step
            if trial[0] <= 0.0:
                left_domain = True
            else:
                try:
                    ft = residual(trial)
                except ValueError:
                    ft = None
                if ft is not None and np.all(np.isfinite(ft)) and math.hypot(*ft) < norm:
                    break
            lam *= 0.5
        else:
            if left_domain:
                raise LeftDomainError(f"Newton step from k={x[0]} points to k <= 0")
            raise NoSingularityFoundError(
                f"no descent from k={x[0]:.6g}, theta={x[1]:.6g}, |M22|={norm:.3e}"
            )
        x, fx = trial, ft
        norm = math.hypot(*fx)
    raise NoSingularityFoundError(f"no convergence after {max_iter} iterations (|M22|={norm:.3e})")

