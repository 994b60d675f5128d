"""Spectral singularities of one-dimensional complex scattering potentials."""

from .barrier import BarrierParams, barrier_profile, f1, f2, m22_closed_form, reduced_vars
from .errors import (
    AtSingularityError,
    BelowCutoffError,
    DegenerateBasisError,
    DomainError,
    InvalidWavenumberError,
    LeftDomainError,
    NoPropagatingModeError,
    NoRootError,
    NoSingularityFoundError,
    SpecSingError,
)
from .scattering import (
    LocalSolution,
    PiecewisePotential,
    ScatteringAmplitudes,
    TransferMatrix,
    amplitudes,
    jost_coefficients,
    layer_matrix,
    scattering_amplitudes,
    solution_at,
    transfer_matrix,
    wronskian,
)
from .singularities import (
    SingularityRecord,
    extend_negative,
    find_generic,
    plus_branch_scan,
    singularity,
    solve_window,
)
from .waveguide import (
    HBAR_C_EV_NM,
    SingularDesign,
    WaveguideSpec,
    effective_problem,
    frequency_scan,
    permittivity,
    singular_design,
    te_scattering,
)

__version__ = "0.1.0"
