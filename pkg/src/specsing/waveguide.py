"""Rectangular waveguide with a gain/loss filling, reduced to 1-D scattering.

Units: energies are ``hbar * frequency`` in eV, lengths in nm, and the speed
of light is eliminated through ``hbar c = 197.3269804 eV nm``.  For the TE
mode ``m`` the field profile ``phi(z)`` obeys
``phi'' + (K^2 eps(z) - K_m^2) phi = 0`` with ``K = omega / c`` and
``K_m = pi m / (2 beta)``.  Since ``eps = 1 - v_{alpha, s/omega}`` this is the
Schrodinger problem of the PT-symmetric barrier with half-width ``alpha``,
strength ``s K / c`` and wavenumber ``kappa = sqrt(K^2 - K_m^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .barrier import BarrierParams, barrier_profile
from .errors import AtSingularityError, BelowCutoffError, NoPropagatingModeError
from .scattering import (
    PiecewisePotential,
    ScatteringAmplitudes,
    amplitudes,
    transfer_matrix,
)
from .singularities import singularity

HBAR_C_EV_NM = 197.3269804


def energy_to_wavenumber(energy_ev: float) -> float:
    """Vacuum wavenumber (1/nm) of a photon with energy ``energy_ev``."""
    return energy_ev / HBAR_C_EV_NM


def wavenumber_to_energy(k_per_nm: float) -> float:
    return k_per_nm * HBAR_C_EV_NM


@dataclass(frozen=True)
class WaveguideSpec:
    """Geometry and gain medium of the waveguide.

    Attributes
    ----------
    alpha : float
        Half-length (nm) of the gain/loss filling along the guide axis.
    beta : float
        Half-height (nm) of the guide.
    m : int
        TE mode index.
    omega_p : float
        Plasma energy ``hbar omega_p`` (eV). Zero switches the filling off.
    delta : float
        Damping energy ``hbar delta`` (eV).
    """

    alpha: float
    beta: float
    m: int = 1
    omega_p: float = 0.2
    delta: float = 1.25

    def __post_init__(self):
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise ValueError("alpha and beta must be positive")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"mode index m must be a positive integer, got {self.m}")
        if self.omega_p < 0.0 or self.delta <= 0.0:
            raise ValueError("omega_p must be >= 0 and delta > 0")

    @property
    def s(self) -> float:
        """Gain strength ``hbar s = (hbar omega_p)^2 / (2 hbar delta)`` in eV."""
        return self.omega_p**2 / (2.0 * self.delta)

    @property
    def cutoff_wavenumber(self) -> float:
        """``K_m = pi m / (2 beta)`` in 1/nm."""
        return math.pi * self.m / (2.0 * self.beta)

    @property
    def cutoff_energy(self) -> float:
        return wavenumber_to_energy(self.cutoff_wavenumber)


@dataclass(frozen=True)
class ModeState:
    omega: float
    K: float
    K_m: float
    kappa: float
    beta: float

    def chi(self, x: float) -> float:
        """Transverse profile ``sin(K_m (x + beta))``; vanishes on both walls."""
        return math.sin(self.K_m * (x + self.beta))


@dataclass(frozen=True)
class SingularDesign:
    n: int
    m: int
    omega_nm: float
    s_nm: float
    alpha: float
    beta: float

    def spec(self, omega_p: float, delta: float) -> WaveguideSpec:
        return WaveguideSpec(self.alpha, self.beta, self.m, omega_p, delta)


def mode_state(spec: WaveguideSpec, omega: float) -> ModeState:
    """Propagation data of TE mode ``spec.m`` at energy ``omega`` (eV).

    Raises
    ------
    BelowCutoffError
        If ``K <= K_m`` so that the mode is evanescent.
    """
    K = energy_to_wavenumber(omega)
    K_m = spec.cutoff_wavenumber
    if not K > K_m:
        raise BelowCutoffError(
            f"hbar omega = {omega} eV is below the TE{spec.m} cutoff {spec.cutoff_energy:.9g} eV"
        )
    return ModeState(omega=omega, K=K, K_m=K_m, kappa=math.sqrt((K - K_m) * (K + K_m)), beta=spec.beta)


def permittivity(spec: WaveguideSpec, omega: float, z: float) -> complex:
    """Relative permittivity ``1 - i s/omega`` (gain, ``z < 0``) or ``1 + i s/omega`` (loss)."""
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    ratio = spec.s / omega
    if -spec.alpha < z < 0.0:
        return complex(1.0, -ratio)
    if 0.0 < z < spec.alpha:
        return complex(1.0, ratio)
    return 1.0 + 0j


def effective_strength(spec: WaveguideSpec, omega: float) -> float:
    """Barrier strength ``s K / c`` in 1/nm^2 seen by the axial profile."""
    return spec.s * omega / HBAR_C_EV_NM**2


def effective_problem(spec: WaveguideSpec, omega: float) -> tuple[PiecewisePotential, float]:
    """Equivalent Schrodinger potential and wavenumber ``kappa`` at energy ``omega``."""
    mode = mode_state(spec, omega)
    z_eff = effective_strength(spec, omega)
    if z_eff == 0.0:
        return PiecewisePotential.free(-spec.alpha), mode.kappa
    return barrier_profile(BarrierParams(spec.alpha, z_eff)), mode.kappa


def te_scattering(spec: WaveguideSpec, omega: float) -> ScatteringAmplitudes:
    potential, kappa = effective_problem(spec, omega)
    return amplitudes(transfer_matrix(potential, kappa))


def reference_energy(spec: WaveguideSpec, n: int = 0) -> float:
    """``hbar omega_{n,m}`` at which this geometry's axial wavenumber equals ``k_n``."""
    kappa = abs(singularity(n).ak) / spec.alpha
    return HBAR_C_EV_NM * math.hypot(kappa, spec.cutoff_wavenumber)


def singular_design(
    n: int,
    m: int,
    s: float,
    omega: float | None = None,
    alpha: float | None = None,
) -> SingularDesign:
    """Waveguide parameters that put singularity ``n`` of TE mode ``m`` on resonance.

    Exactly one of ``omega`` (eV) or ``alpha`` (nm) must be given; ``s`` is the
    gain strength ``hbar s`` in eV. The two conditions ``kappa alpha = ak_n``
    and ``s K / (c kappa^2) = y_n`` fix the remaining quantities.

    Raises
    ------
    NoPropagatingModeError
        If the required axial wavenumber exceeds the vacuum wavenumber.
    """
    if (omega is None) == (alpha is None):
        raise ValueError("give exactly one of omega or alpha")
    if s <= 0.0:
        raise ValueError(f"gain strength must be positive, got {s}")
    rec = singularity(n)
    ak, y, a2z = abs(rec.ak), abs(rec.y), abs(rec.a2z)
    if omega is not None:
        kappa = math.sqrt(s * omega / (HBAR_C_EV_NM**2 * y))
        alpha = ak / kappa
    else:
        kappa = ak / alpha
        omega = y * (HBAR_C_EV_NM * kappa) ** 2 / s
    K = energy_to_wavenumber(omega)
    if not K > kappa:
        raise NoPropagatingModeError(
            f"design needs kappa = {kappa:.6g}/nm above the vacuum wavenumber {K:.6g}/nm"
        )
    K_m = math.sqrt((K - kappa) * (K + kappa))
    z_n = a2z / alpha**2
    return SingularDesign(
        n=n,
        m=m,
        omega_nm=HBAR_C_EV_NM * math.hypot(kappa, K_m),
        s_nm=HBAR_C_EV_NM**2 * z_n / omega,
        alpha=alpha,
        beta=math.pi * m / (2.0 * K_m),
    )


@dataclass(frozen=True)
class ScanRow:
    """One frequency sample.

    Power coefficients are ``None`` when the mode is evanescent or when the
    amplitudes diverge; ``abs_m22`` is kept in the divergent case.
    """

    ratio: float
    omega: float
    T2: float | None
    Rl2: float | None
    Rr2: float | None
    abs_m22: float | None
    diverged: bool = False
    below_cutoff: bool = False


def frequency_scan(
    spec: WaveguideSpec,
    ratio_min: float,
    ratio_max: float,
    points: int,
    omega_ref: float | None = None,
) -> list[ScanRow]:
    """Sample |T|^2, |R^l|^2, |R^r|^2 on a uniform grid of ``omega / omega_ref``.

    ``omega_ref`` defaults to ``reference_energy(spec, 0)``. Grid points below
    the mode cutoff are returned flagged rather than raising.
    """
    if points < 2:
        raise ValueError("a scan needs at least two points")
    if not 0.0 < ratio_min < ratio_max:
        raise ValueError("require 0 < ratio_min < ratio_max")
    if omega_ref is None:
        omega_ref = reference_energy(spec, 0)
    rows = []
    for i in range(points):
        ratio = ratio_min + (ratio_max - ratio_min) * i / (points - 1)
        omega = ratio * omega_ref
        try:
            potential, kappa = effective_problem(spec, omega)
        except BelowCutoffError:
            rows.append(ScanRow(ratio, omega, None, None, None, None, below_cutoff=True))
            continue
        m = transfer_matrix(potential, kappa)
        try:
            amp = amplitudes(m)
        except AtSingularityError:
            rows.append(ScanRow(ratio, omega, None, None, None, abs(m.m22), diverged=True))
            continue
        rows.append(
            ScanRow(
                ratio,
                omega,
                amp.transmission,
                amp.reflection_left,
                amp.reflection_right,
                abs(m.m22),
            )
        )
    return rows


def peak_row(rows: list[ScanRow]) -> ScanRow:
    """Row with the largest finite |T|^2 (diverged rows win outright)."""
    diverged = [r for r in rows if r.diverged]
    if diverged:
        return diverged[0]
    finite = [r for r in rows if r.T2 is not None]
    if not finite:
        raise ValueError("scan has no propagating rows")
    return max(finite, key=lambda r: r.T2)
