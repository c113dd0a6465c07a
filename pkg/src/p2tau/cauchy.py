"""Vertical-line contours, Cauchy transforms, and the scalar splitting factor.

The diagonal part of the jump is removed by the scalar function

    phi(z) = exp( integral of log A(w) / (z - w)  dw / (2 pi i) )

over the upward-oriented vertical line Re w = shift.  phi is analytic off
that line, tends to 1 at infinity, and its boundary values satisfy
phi_plus = phi_minus * A, where "plus" is the limit from the right
(Re z larger than the line).  Boundary values are realized by displacing
the integration line away from the evaluation point inside the
analyticity strip |Re z| < 1/2 instead of by singular quadrature: every
integrand in this package is analytic in the strip, so the displacement
is exact and the quadrature stays spectrally convergent.

Contours discretize a vertical line through the rational map
u -> shift + i L u / (1 - u^2) with Gauss-Legendre points on (-1, 1);
weights carry the map Jacobian, so plain weighted sums realize contour
integrals with the upward orientation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jump import jump_entries


class WindingError(RuntimeError):
    """The argument of A winds around zero along the contour.

    A nonzero winding makes log A discontinuous as a single-valued field,
    so the scalar factor phi is ill-defined.
    """


@dataclass(frozen=True)
class Contour:
    """Quadrature realization of the vertical line Re z = shift.

    nodes are strictly ordered by increasing imaginary part and weights
    include the Jacobian of the rational map, so sum(f(nodes) * weights)
    approximates the upward contour integral of f.
    """

    nodes: np.ndarray
    weights: np.ndarray
    shift: float
    map_scale: float
    n_nodes: int


@dataclass(frozen=True)
class ScalarFieldOnContour:
    """Samples of a nonvanishing scalar together with a continuous log.

    log_values is unwrapped along the contour: adjacent imaginary parts
    differ by less than pi, and the branch is anchored at the first node
    (principal log there).
    """

    values: np.ndarray
    log_values: np.ndarray


def build_contour(n: int = 200, L: float = 2.0, eps: float = 0.0) -> Contour:
    """Builds the quadrature contour for the line Re z = eps.

    Parameters
    ----------
    n : int
        Number of Gauss-Legendre nodes, at least 8.
    L : float
        Scale of the rational map u -> i L u / (1 - u^2); larger L pushes
        nodes outward.
    eps : float
        Real shift of the line; 0 realizes the imaginary axis.
    """
    if n < 8:
        raise ValueError(f"contour needs at least 8 nodes, got {n}")
    if L <= 0:
        raise ValueError(f"map scale must be positive, got {L}")
    u, w = np.polynomial.legendre.leggauss(int(n))
    nodes = eps + 1j * L * u / (1.0 - u ** 2)
    jac = 1j * L * (1.0 + u ** 2) / (1.0 - u ** 2) ** 2
    return Contour(nodes=nodes, weights=w * jac, shift=float(eps),
                   map_scale=float(L), n_nodes=int(n))


def _field_from_values(values: np.ndarray) -> ScalarFieldOnContour:
    """Continuous-log field from nonvanishing samples along a contour."""
    small = np.min(np.abs(values))
    if small < 1e-12:
        raise ValueError(
            f"|A| = {small:.3e} at a contour node: potential divisor hit; "
            "the scalar factor is unreliable this close to a zero")
    # unwrap anchors the branch at the first node, where A ~ 1 makes the
    # principal choice the natural one
    phase = np.unwrap(np.angle(values))
    log_values = np.log(np.abs(values)) + 1j * phase
    return ScalarFieldOnContour(values=values, log_values=log_values)


def log_a_field(t, mp, contour: Contour, a_fn=None) -> ScalarFieldOnContour:
    """Samples A on the contour with a branch-continuous logarithm.

    a_fn, when given, replaces the jump-entry field A(z) with a caller
    supplied callable (used by tests to inject synthetic fields).
    """
    if a_fn is None:
        values = jump_entries(contour.nodes, t, mp).A
    else:
        values = np.asarray(a_fn(contour.nodes), dtype=complex)
    return _field_from_values(values)


def winding_number(values: np.ndarray) -> int:
    """Total increment of arg(values) along the sampling order, over 2 pi.

    The samples must resolve the argument (true variation below pi
    between neighbours); zeros among the values raise as divisor hits.
    """
    field = _field_from_values(np.asarray(values, dtype=complex))
    total = field.log_values[-1].imag - field.log_values[0].imag
    return int(np.round(total / (2.0 * np.pi)))


def winding_of_a(t, mp, contour: Contour, a_fn=None) -> int:
    """Winding of A along the contour; zero is required for phi.

    The orientation is upward (increasing imaginary part).  A factor
    with a zero and a pole on opposite sides of the line contributes
    +-1; the admissible data handled here are expected to give 0.
    """
    field = log_a_field(t, mp, contour, a_fn=a_fn)
    total = field.log_values[-1].imag - field.log_values[0].imag
    return int(np.round(total / (2.0 * np.pi)))


def _cauchy_sum(field: ScalarFieldOnContour, contour: Contour, z):
    """exp of the quadrature Cauchy integral of field at points z."""
    z = np.asarray(z, dtype=complex)
    diff = z[..., None] - contour.nodes
    close = np.min(np.abs(diff), axis=-1)
    if np.any(close < 1e-10 * (1.0 + np.abs(z))):
        raise ValueError(
            "evaluation point collides with a quadrature node; request a "
            "boundary value (side='plus'/'minus') instead")
    integral = np.sum(field.log_values * contour.weights / diff, axis=-1)
    return np.exp(integral / (2j * np.pi))


def _boundary_line_field(t, mp, contour: Contour, side: str, a_fn,
                         eps: float, boundary_oversample: int):
    """Integration line and log A field realizing the requested side.

    Shared between the scalar factor and its derivative so both use the
    identical displaced-line realization.
    """
    if side not in ("plus", "minus", "off"):
        raise ValueError(f"side must be 'plus', 'minus' or 'off', got {side!r}")
    base = log_a_field(t, mp, contour, a_fn=a_fn)
    total = base.log_values[-1].imag - base.log_values[0].imag
    wind = int(np.round(total / (2.0 * np.pi)))
    if wind != 0:
        raise WindingError(
            f"winding of A along the contour is {wind}; the scalar factor "
            "phi is ill-defined for nonzero winding")
    if side == "off":
        return contour, base
    displacement = -eps if side == "plus" else eps
    target = contour.shift + displacement
    if abs(target) > 0.45:
        raise ValueError(
            f"displaced line Re z = {target} leaves the analyticity "
            "strip |Re z| < 1/2")
    line = build_contour(boundary_oversample * contour.n_nodes,
                         contour.map_scale, target)
    return line, log_a_field(t, mp, line, a_fn=a_fn)


def phi_factor(t, mp, contour: Contour, z, side: str,
               a_fn=None, eps: float = 0.1, boundary_oversample: int = 3):
    """Scalar factor phi at z, off-contour or as a boundary value.

    Parameters
    ----------
    side : {"plus", "minus", "off"}
        "off" evaluates the analytic function away from the contour;
        "plus"/"minus" produce the boundary values from the right/left
        of the line, realized by displacing the integration line by
        -+eps inside the analyticity strip.
    eps : float
        Displacement used for the boundary modes.
    boundary_oversample : int
        Node multiplier for the displaced line; the Cauchy kernel varies
        on the scale eps there, so the displaced quadrature needs denser
        sampling than the requesting contour.

    Raises
    ------
    WindingError
        When arg A winds along the line, leaving phi ill-defined.
    ValueError
        For an unknown side, an off-contour point colliding with a node,
        or a displaced line leaving the analyticity strip.
    """
    line, field = _boundary_line_field(t, mp, contour, side, a_fn, eps,
                                       boundary_oversample)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    out = _cauchy_sum(field, line, z_arr)
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return complex(out[0])
    return out


def log_phi_derivative(t, mp, contour: Contour, z, side: str = "plus",
                       a_fn=None, eps: float = 0.1,
                       boundary_oversample: int = 3):
    """d/dz log phi at z, differentiating the Cauchy quadrature exactly.

    Uses the same displaced-line realization as phi_factor, so boundary
    derivatives pair consistently with the boundary values.  Accepts the
    same side/eps/oversample knobs; raises on the same conditions.
    """
    line, field = _boundary_line_field(t, mp, contour, side, a_fn, eps,
                                       boundary_oversample)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    diff = z_arr[..., None] - line.nodes
    close = np.min(np.abs(diff), axis=-1)
    if np.any(close < 1e-10 * (1.0 + np.abs(z_arr))):
        raise ValueError(
            "evaluation point collides with a quadrature node; request a "
            "boundary value (side='plus'/'minus') instead")
    out = -np.sum(field.log_values * line.weights / diff ** 2,
                  axis=-1) / (2j * np.pi)
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return complex(out[0])
    return out


if __name__ == "__main__":
    c = build_contour(24, 1.0, 0.0)
    val = np.sum(c.weights / (1.0 - c.nodes ** 2))
    print("integral of 1/(1-z^2) over iR:", val, "(expect", 1j * np.pi, ")")
