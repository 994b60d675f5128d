"""Transfer matrices and scattering amplitudes for piecewise-constant potentials.

Conventions follow the Schrodinger operator ``H = -d^2/dx^2 + v(x)`` with
``hbar = 2m = 1``.  Outside the support of ``v`` every solution of
``H psi = k^2 psi`` is a combination ``A exp(ikx) + B exp(-ikx)``; the transfer
matrix maps the left coefficients ``(A-, B-)`` onto the right ones ``(A+, B+)``.

Inside the support the wavefunction is propagated in the ``(phi, phi')`` basis,
where the propagator of a constant layer is an entire function of
``kappa^2 = k^2 - v``.  The choice of square-root branch therefore never
enters the transfer matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AtSingularityError, InvalidWavenumberError

K_MIN = 1e-12
M22_UNDERFLOW = 1e-300
_TAYLOR_CUTOFF = 1e-4


@dataclass(frozen=True)
class PiecewisePotential:
    """Compactly supported potential made of constant complex layers.

    Parameters
    ----------
    left_edge : float
        Position where the first layer starts.
    layers : sequence of (width, value)
        Layers ordered from left to right. Widths must be strictly positive.
    """

    left_edge: float
    layers: tuple[tuple[float, complex], ...] = ()

    def __post_init__(self):
        if not math.isfinite(self.left_edge):
            raise ValueError(f"left_edge must be finite, got {self.left_edge}")
        clean = []
        for width, value in self.layers:
            width = float(width)
            value = complex(value)
            if not math.isfinite(width) or width <= 0.0:
                raise ValueError(f"layer width must be positive and finite, got {width}")
            if not cmath.isfinite(value):
                raise ValueError(f"layer value must be finite, got {value}")
            clean.append((width, value))
        object.__setattr__(self, "left_edge", float(self.left_edge))
        object.__setattr__(self, "layers", tuple(clean))

    @classmethod
    def free(cls, left_edge: float = 0.0) -> "PiecewisePotential":
        return cls(left_edge, ())

    @property
    def right_edge(self) -> float:
        return self.left_edge + sum(w for w, _ in self.layers)

    @property
    def support_length(self) -> float:
        return self.right_edge - self.left_edge

    @property
    def interfaces(self) -> list[float]:
        """Positions of all layer boundaries, edges included."""
        xs = [self.left_edge]
        for width, _ in self.layers:
            xs.append(xs[-1] + width)
        return xs

    def __call__(self, x: float) -> complex:
        """Potential value at ``x``; at an interface the layer to the right wins."""
        if x < self.left_edge:
            return 0j
        edge = self.left_edge
        for width, value in self.layers:
            edge += width
            if x < edge:
                return value
        return 0j


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex
    k: float

    @classmethod
    def from_array(cls, a: np.ndarray, k: float) -> "TransferMatrix":
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]), float(k))

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection/transmission amplitudes and S-matrix eigenvalues at one ``k``.

    Left and right transmission amplitudes coincide identically, so a single
    ``t`` is stored; ``t_left`` and ``t_right`` are aliases.
    """

    k: float
    t: complex
    r_left: complex
    r_right: complex
    s_plus: complex
    s_minus: complex

    @property
    def t_left(self) -> complex:
        return self.t

    @property
    def t_right(self) -> complex:
        return self.t

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2

    @property
    def reflection_left(self) -> float:
        return abs(self.r_left) ** 2

    @property
    def reflection_right(self) -> float:
        return abs(self.r_right) ** 2


class LocalSolution(NamedTuple):
    """Value and derivative of a solution at a point."""

    phi: complex
    dphi: complex


class JostCoefficients(NamedTuple):
    """Asymptotic coefficient pairs ``(A, B)`` of the two Jost solutions.

    ``plus_*`` belong to the solution that is a pure ``exp(ikx)`` on the right,
    ``minus_*`` to the one that is a pure ``exp(-ikx)`` on the left.
    """

    plus_left: tuple[complex, complex]
    plus_right: tuple[complex, complex]
    minus_left: tuple[complex, complex]
    minus_right: tuple[complex, complex]


def check_wavenumber(k: float) -> float:
    k = float(k)
    if not math.isfinite(k) or k < K_MIN:
        raise InvalidWavenumberError(f"wavenumber must be finite and >= {K_MIN}, got {k}")
    return k


def _sinc(x: complex) -> complex:
    if abs(x) < _TAYLOR_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return cmath.sin(x) / x


def _propagator(width: float, kappa: complex) -> np.ndarray:
    # Entries depend on kappa only through kappa^2 and cos/sinc, both even.
    x = kappa * width
    c = cmath.cos(x)
    s = width * _sinc(x)
    return np.array([[c, s], [-kappa * kappa * s, c]], dtype=complex)


def layer_matrix(width: float, v: complex, k: float) -> np.ndarray:
    """Propagator of ``(phi, phi')`` across a constant layer.

    Returns ``[[cos(kw), sin(kw)/k], [-k sin(kw), cos(kw)]]`` with
    ``k = sqrt(k^2 - v)`` the local wavenumber (principal branch). The
    ``kappa -> 0`` limit ``[[1, w], [0, 1]]`` is handled by a Taylor series.
    """
    width = float(width)
    v = complex(v)
    if not (math.isfinite(width) and cmath.isfinite(v) and math.isfinite(k)):
        raise ValueError("layer_matrix requires finite inputs")
    if width <= 0.0:
        raise ValueError(f"width must be positive, got {width}")
    return _propagator(width, cmath.sqrt(k * k - v))


def plane_wave_basis(x: float, k: float) -> np.ndarray:
    """Matrix sending ``(A, B)`` to ``(phi, phi')`` of ``A e^{ikx} + B e^{-ikx}``."""
    e = cmath.exp(1j * k * x)
    return np.array([[e, 1.0 / e], [1j * k * e, -1j * k / e]], dtype=complex)


def _plane_wave_basis_inv(x: float, k: float) -> np.ndarray:
    e = cmath.exp(1j * k * x)
    return np.array(
        [[0.5 / e, 0.5 / (1j * k * e)], [0.5 * e, -0.5 * e / (1j * k)]], dtype=complex
    )


def _compose(layers: Sequence[tuple[float, complex]], k: float) -> np.ndarray:
    acc = np.eye(2, dtype=complex)
    k2 = k * k
    for width, value in layers:
        acc = _propagator(width, cmath.sqrt(k2 - value)) @ acc
    return acc


def transfer_matrix(p: PiecewisePotential, k: float) -> TransferMatrix:
    """Transfer matrix ``M(k)`` of ``p`` in the plane-wave coefficient basis."""
    k = check_wavenumber(k)
    inner = _compose(p.layers, k)
    m = _plane_wave_basis_inv(p.right_edge, k) @ inner @ plane_wave_basis(p.left_edge, k)
    return TransferMatrix.from_array(m, k)


def amplitudes(m: TransferMatrix) -> ScatteringAmplitudes:
    """Scattering amplitudes and S-matrix eigenvalues from a transfer matrix.

    Raises
    ------
    AtSingularityError
        If ``|M22|`` underflows, i.e. ``k`` sits on a spectral singularity.
    """
    if abs(m.m22) < M22_UNDERFLOW:
        raise AtSingularityError(f"|M22| = {abs(m.m22):.3e} at k = {m.k}")
    root = cmath.sqrt(1.0 - m.m11 * m.m22)
    # s_- = (1 - root)/m22 rewritten as m11/(1 + root); Re(root) >= 0 keeps it stable.
    return ScatteringAmplitudes(
        k=m.k,
        t=1.0 / m.m22,
        r_left=-m.m21 / m.m22,
        r_right=m.m12 / m.m22,
        s_plus=(1.0 + root) / m.m22,
        s_minus=m.m11 / (1.0 + root),
    )


def scattering_amplitudes(p: PiecewisePotential, k: float) -> ScatteringAmplitudes:
    return amplitudes(transfer_matrix(p, k))


def jost_coefficients(m: TransferMatrix) -> JostCoefficients:
    return JostCoefficients(
        plus_left=(m.m22, -m.m21),
        plus_right=(1.0 + 0j, 0j),
        minus_left=(0j, 1.0 + 0j),
        minus_right=(m.m12, m.m22),
    )


def wronskian(m: TransferMatrix) -> complex:
    """Wronskian ``psi_+ psi_-' - psi_- psi_+'`` of the Jost pair, equal to ``-2ik M22``."""
    return -2j * m.k * m.m22


def solution_at(
    p: PiecewisePotential,
    k: float,
    left_coeffs: tuple[complex, complex],
    x: float,
) -> LocalSolution:
    """Evaluate the solution with left asymptotics ``A e^{ikx} + B e^{-ikx}`` at ``x``."""
    k = check_wavenumber(k)
    a, b = left_coeffs
    if x <= p.left_edge:
        phi, dphi = plane_wave_basis(x, k) @ np.array([a, b], dtype=complex)
        return LocalSolution(complex(phi), complex(dphi))
    state = plane_wave_basis(p.left_edge, k) @ np.array([a, b], dtype=complex)
    edge = p.left_edge
    k2 = k * k
    for width, value in p.layers:
        step = min(width, x - edge)
        state = _propagator(step, cmath.sqrt(k2 - value)) @ state
        edge += step
        if edge >= x:
            return LocalSolution(complex(state[0]), complex(state[1]))
    state = _propagator(x - edge, k) @ state
    return LocalSolution(complex(state[0]), complex(state[1]))
