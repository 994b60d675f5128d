"""Closed-form scattering data for the imaginary PT-symmetric barrier.

The potential equals ``+iz`` on ``(-a, 0)``, ``-iz`` on ``(0, a)`` and zero
elsewhere.  With ``y = z/k^2`` and ``w = sqrt(1 - iy)`` the M22 entry of its
transfer matrix factors as ``exp(2iak) (f1 - i f2) / sqrt(1 + y^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .scattering import PiecewisePotential, check_wavenumber


@dataclass(frozen=True)
class BarrierParams:
    """Half-width ``a > 0`` and nonzero strength ``z`` of the barrier."""

    a: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"half-width a must be positive, got {self.a}")
        if not math.isfinite(self.z) or self.z == 0.0:
            raise ValueError(f"strength z must be finite and nonzero, got {self.z}")


@dataclass(frozen=True)
class ReducedVars:
    y: float
    w: complex
    q: float
    r: float


def barrier_profile(p: BarrierParams) -> PiecewisePotential:
    return PiecewisePotential(-p.a, ((p.a, 1j * p.z), (p.a, -1j * p.z)))


def _trig(p: BarrierParams, k: float) -> tuple[float, complex, complex]:
    y = p.z / (k * k)
    w = cmath.sqrt(1.0 - 1j * y)
    return y, w, p.a * k * w


def f_pair(p: BarrierParams, k: float) -> tuple[float, float]:
    """Return ``(f1(k), f2(k))``; both vanish exactly at a spectral singularity."""
    k = check_wavenumber(k)
    y, w, arg = _trig(p, k)
    c, s = cmath.cos(arg), cmath.sin(arg)
    norm = math.hypot(1.0, y)
    f1 = norm * (c * c.conjugate()).real - (s * s.conjugate()).real
    f2 = (cmath.sqrt(1.0 + 1j * y) * (2.0 - 1j * y) * s * cmath.cos(p.a * k * w.conjugate())).real
    return f1, f2


def f1(p: BarrierParams, k: float) -> float:
    return f_pair(p, k)[0]


def f2(p: BarrierParams, k: float) -> float:
    return f_pair(p, k)[1]


def f1_complex(p: BarrierParams, k: float) -> complex:
    """Unreduced complex expression behind ``f1``; its imaginary part is roundoff."""
    k = check_wavenumber(k)
    _, _, arg = _trig(p, k)
    c, s = cmath.cos(arg), cmath.sin(arg)
    y = p.z / (k * k)
    return math.hypot(1.0, y) * c * c.conjugate() - s * s.conjugate()


def m22_closed_form(p: BarrierParams, k: float) -> complex:
    k = check_wavenumber(k)
    a1, a2 = f_pair(p, k)
    y = p.z / (k * k)
    return cmath.exp(2j * p.a * k) * complex(a1, -a2) / math.hypot(1.0, y)


def reduced_vars(p: BarrierParams, k: float) -> ReducedVars:
    """Change of variables ``2akw = r - iq`` with ``r > 0`` and ``sign(q) = sign(y)``."""
    k = check_wavenumber(k)
    y = p.z / (k * k)
    root = math.hypot(1.0, y)
    ak = p.a * k
    # sqrt(root - 1) computed as |y|/sqrt(root + 1) to avoid cancellation at small y.
    q = ak * math.sqrt(2.0) * abs(y) / math.sqrt(root + 1.0) * math.copysign(1.0, y)
    r = ak * math.sqrt(2.0 * (root + 1.0))
    return ReducedVars(y=y, w=cmath.sqrt(1.0 - 1j * y), q=q, r=r)


def scaled_wavenumber(r: float, y: float) -> float:
    """Invert ``r = ak sqrt(2(sqrt(y^2+1)+1))`` for ``ak``."""
    return r / math.sqrt(2.0 * (math.hypot(1.0, y) + 1.0))
