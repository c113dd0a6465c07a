"""Derived parameters of the rank-one Stokes data (s1, s3).

The pair (s1, s3) determines an effective order nu, two connection
coefficients h0 and h1, and a normalization constant h used throughout the
jump and kernel modules.  The combination s1*s3 = 1 is a degenerate
configuration (the logarithm branch collapses) and is rejected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specialfn import SQRT_TWO_PI, gamma_complex


class DegenerateStokesError(ValueError):
    """Raised when (s1, s3) lies on the excluded degenerate locus."""


@dataclass(frozen=True)
class StokesData:
    """Full Stokes triple; s2 is determined by (s1, s3).

    The triple satisfies the cyclic constraint
    s1 - s2 + s3 + s1*s2*s3 = 0.
    """

    s1: complex
    s2: complex
    s3: complex

    def constraint_residual(self) -> complex:
        """Residual of the cyclic constraint (zero for valid data)."""
        return self.s1 - self.s2 + self.s3 + self.s1 * self.s2 * self.s3


def stokes_from_pair(s1, s3) -> StokesData:
    """Builds the Stokes triple from the free pair (s1, s3).

    s2 = (s1 + s3)/(1 - s1*s3).  Rejects the degenerate products
    s1*s3 in {0, 1} and pairs for which 1 - s1*s3 falls on the negative
    real axis (the principal-branch cut of the logarithm defining nu).
    """
    s1 = complex(s1)
    s3 = complex(s3)
    prod = s1 * s3
    if prod == 0.0:
        raise DegenerateStokesError("s1*s3 = 0 is degenerate (integer nu)")
    if prod == 1.0:
        raise DegenerateStokesError("s1*s3 = 1 is degenerate (log(0))")
    w = 1.0 - prod
    if w.imag == 0.0 and w.real < 0.0:
        raise DegenerateStokesError(
            f"1 - s1*s3 = {w} lies on the branch cut of the principal log")
    s2 = (s1 + s3) / w
    return StokesData(s1=s1, s2=s2, s3=s3)


@dataclass(frozen=True)
class MonodromyParams:
    """Derived parameters.

    nu    effective order, Re nu in (-1/2, 1/2)
    h0/h1 connection coefficients of the model problem
    h     normalization constant, h^2 = -h1/s3
    s2    third Stokes multiplier of the underlying cyclic relation
    """

    s1: complex
    s3: complex
    nu: complex
    h0: complex
    h1: complex
    h: complex
    s2: complex


def derived_params(s1, s3) -> MonodromyParams:
    """Computes (nu, h0, h1, h, s2) from the Stokes pair (s1, s3).

    Raises DegenerateStokesError when s1*s3 is 0 or 1 (nu integer or
    logarithm singular) or when h1 = 0, i.e. whenever the rank-one
    structure degenerates.
    """
    sd = stokes_from_pair(s1, s3)
    nu = -np.log(1.0 - sd.s1 * sd.s3) / (2.0j * np.pi)
    h0 = -1j * SQRT_TWO_PI / complex(gamma_complex(nu + 1.0))
    h1 = SQRT_TWO_PI * np.exp(1j * np.pi * nu) / complex(gamma_complex(-nu))
    if h1 == 0.0:
        raise DegenerateStokesError(
            f"h1 = 0 at nu = {nu}; normalization constant would vanish")
    h = np.sqrt(-h1 / sd.s3)
    return MonodromyParams(s1=sd.s1, s3=sd.s3, nu=complex(nu),
                           h0=complex(h0), h1=complex(h1), h=complex(h),
                           s2=complex(sd.s2))


if __name__ == "__main__":
    p = derived_params(2.0j, 1.0j)
    print("nu =", p.nu)
    print("h0 =", p.h0, " h1 =", p.h1, " h =", p.h)
    print("cyclic check 1 + h0*h1 - e^{2 pi i nu} =",
          1 + p.h0 * p.h1 - np.exp(2j * np.pi * p.nu))
