import numpy as np
from p2tau.monodromy import derived_params
from p2tau.geometry import theta_prime
from p2tau.corrections import (_scaled_block, _trace_ray_points, _inv2)
from p2tau.jump import _wronskian_block, _hprod, model_stokes_h
from p2tau.specialfn import pcf_d

mp = derived_params(2j, 1j)
t = 2.0
nu = mp.nu
target = 2j * nu / 3 + nu**2 / t


def blk_alt(zv, which):
    """Raw sector-adapted Wronskian blocks (moderate |zeta| only)."""
    f = pcf_d(-nu - 1.0, -1j * zv)           # u(-zeta)
    fp = -0.5 * zv * f + 1j * pcf_d(-nu, -1j * zv)
    if which == 1:
        g = pcf_d(nu, zv)                     # v(zeta)
        gp = nu * pcf_d(nu - 1.0, zv) - 0.5 * zv * g
    else:
        g = pcf_d(nu, -zv)                    # v(-zeta)
        gp = -nu * pcf_d(nu - 1.0, -zv) - 0.5 * zv * g
    return np.array([[f, g], [fp, gp]])


def transfer(which, zeta_probe):
    blk = _wronskian_block(nu, np.atleast_1d(zeta_probe), False)[0]
    alt = blk_alt(zeta_probe, which)
    return np.linalg.solve(blk, alt)


# constancy check of T at two probe points on each ray
for which, alpha in ((1, 3 * np.pi / 8), (2, np.pi - 0.12)):
    t1 = transfer(which, 2.2 * np.exp(1j * alpha))
    t2 = transfer(which, 3.1 * np.exp(1j * alpha))
    print(f"T{which} =", np.array2string(t1, precision=6))
    print(f"   constancy: {np.max(np.abs(t1 - t2)):.2e}")
    rc = np.diag([np.exp(0.5j * np.pi * (nu + 1.0)), 1.0]) @ _hprod(mp, which)
    rct = np.linalg.solve(t1, rc)
    print(f"   rc-tilde{which} =", np.array2string(rct, precision=6))
