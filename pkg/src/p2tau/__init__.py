"""Numerical evaluator for the generic Painleve II tau-function.

The tau-function is represented as a Fredholm determinant of an explicit
integrable operator acting on a contour along the imaginary axis, plus
closed-form and quadrature correction terms; zeros of the determinant in
the complex t-plane (the Malgrange divisor) are located by a grid scan,
argument-principle confirmation and Newton refinement.
"""
from .cauchy import (
    Contour,
    WindingError,
    build_contour,
    log_a_field,
    log_phi_derivative,
    phi_factor,
    winding_number,
    winding_of_a,
)
from .fredholm import (
    DetResult,
    NystromOperator,
    assemble_kernel,
    det_via_blocks,
    det_via_traces,
    log_det,
)
from .geometry import PhaseGeometry, phase_points, theta
from .jump import (
    JumpDerivatives,
    JumpEntries,
    JumpField,
    jump_entries,
    model_stokes_h,
    parametrix_l4,
    parametrix_r0,
    sector_jump_g,
    stokes_matrix,
)
from .monodromy import (
    DegenerateStokesError,
    MonodromyParams,
    StokesData,
    derived_params,
    stokes_from_pair,
)
from .specialfn import (
    PrecisionPolicy,
    gamma_complex,
    kummer_m,
    pcf_d,
    pcf_d_prime,
    pcf_d_scaled,
)

__version__ = "0.1.0"
