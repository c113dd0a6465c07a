"""Phase geometry: the cubic phase and the conformal coordinates.

theta(z) = 4 z^3 / 3 - z drives all exponential factors.  The two
conformal coordinates zeta(z, t) and xi(z, t) = zeta(-z, t) map
neighborhoods of the stationary points z = +-1/2 onto the model-problem
plane; their squares satisfy zeta^2 + xi^2 = -8 i t / 3 identically.

Branch convention (used consistently across the package): with
c_t = sqrt(-4 i t / 3) principal,

    log zeta(z) = log 2 + Log c_t + Log(1/2 - z) + Log(1 + z) / 2
                  + 2 pi i [Im z on the upper side of the real axis]

which makes zeta analytic in a neighborhood of z = 1/2 and single-valued
on the imaginary axis.  All powers of zeta, xi and of the Moebius ratio
m(z) = (z + 1/2)/(z - 1/2) are taken through these logarithms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def theta(z):
    """Cubic phase theta(z) = 4 z^3/3 - z."""
    z = np.asarray(z, dtype=complex)
    return (4.0 / 3.0) * z ** 3 - z


def theta_prime(z):
    """d theta / dz = 4 z^2 - 1."""
    z = np.asarray(z, dtype=complex)
    return 4.0 * z ** 2 - 1.0


@dataclass(frozen=True)
class PhaseGeometry:
    """Pointwise geometric data at nodes z for a fixed time t.

    All arrays share the shape of z.  log_zeta / log_xi / log_m are the
    branch-pinned logarithms described in the module docstring; zeta, xi,
    m are their exponentials.  *_dz are z-derivatives, *_dt the
    t-derivatives at fixed z (zeta_dt = zeta / (2 t), xi_dt = xi / (2 t)).
    """

    t: complex
    z: np.ndarray
    zeta: np.ndarray
    xi: np.ndarray
    m: np.ndarray
    log_zeta: np.ndarray
    log_xi: np.ndarray
    log_m: np.ndarray
    zeta_dz: np.ndarray
    xi_dz: np.ndarray
    m_dz: np.ndarray


def _log_zeta_branch(z, t):
    """Branch-pinned log of zeta(z, t); see module docstring.

    The sheet indicator uses the sign bit of Im z rather than Im z > 0 so
    that points with Im z = +-0.0 land on the same side of the real axis
    as numpy's principal-log cuts place them.  With that pairing the sheet
    term and the cut of Log m flip together and every power combination
    appearing downstream stays continuous across the real axis.
    """
    c_t = np.sqrt(-4j * t / 3.0)
    lz = (np.log(2.0) + np.log(c_t) + np.log(0.5 - z) + 0.5 * np.log(1.0 + z)
          + 2j * np.pi * (~np.signbit(z.imag)).astype(float))
    return lz


def phase_points(z, t) -> PhaseGeometry:
    """Evaluates the conformal coordinates and derivatives at nodes z.

    t must be nonzero; the coordinates degenerate at t = 0.
    """
    t = complex(t)
    if t == 0:
        raise ValueError("phase geometry is undefined at t = 0")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z == 0.5) or np.any(z == -0.5):
        raise ValueError("Moebius factor m(z) is singular at z = +-1/2")
    log_zeta = _log_zeta_branch(z, t)
    log_xi = _log_zeta_branch(-z, t)
    log_m = np.log(z + 0.5) - np.log(z - 0.5)
    zeta = np.exp(log_zeta)
    xi = np.exp(log_xi)
    m = np.exp(log_m)
    # zeta^2 = -4 i t (4 z^3/3 - z + 2/3)/... derivative via d/dz log zeta
    dlog = -1.0 / (0.5 - z) + 0.5 / (1.0 + z)
    zeta_dz = zeta * dlog
    dlog_xi = (-1.0 / (0.5 + z) + 0.5 / (1.0 - z)) * (-1.0)
    xi_dz = xi * dlog_xi
    m_dz = m * (1.0 / (z + 0.5) - 1.0 / (z - 0.5))
    return PhaseGeometry(t=t, z=z, zeta=zeta, xi=xi, m=m,
                         log_zeta=log_zeta, log_xi=log_xi, log_m=log_m,
                         zeta_dz=zeta_dz, xi_dz=xi_dz, m_dz=m_dz)


if __name__ == "__main__":
    g = phase_points(np.array([0.3j, -1.2j, 2.0j]), 2.0)
    print("zeta^2 + xi^2 + 8it/3 =", g.zeta ** 2 + g.xi ** 2 + 8j * g.t / 3.0)
