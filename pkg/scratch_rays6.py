import numpy as np
from p2tau.monodromy import derived_params
from p2tau.corrections import (_p_factor, _inv2, _trace_ray_points)
from p2tau.geometry import theta_prime
from p2tau.jump import _hprod, model_stokes_h

mp = derived_params(2j, 1j)
t = 2.0


def profile(k, s, alpha, zmax=16.0, n=40):
    z, zeta, dz_ds, ws = _trace_ray_points(alpha, t, n, zmax)
    p, _, p_t = _p_factor(z, t, mp)
    q = _inv2(p) @ p_t
    q[..., 0, 0] += zeta**2 / (4 * t)
    q[..., 1, 1] -= zeta**2 / (4 * t)
    e_m = np.exp(-zeta**2 / 2)
    q[..., 0, 1] *= e_m
    q[..., 1, 0] /= e_m
    dph = np.diag([np.exp(0.5j * np.pi * (mp.nu + 1.0)), 1.0])
    rc = dph @ _hprod(mp, s)
    r = np.linalg.inv(rc) @ q @ rc
    hk = model_stokes_h(k, mp)
    if k % 2 == 0:
        val = 2j * t * theta_prime(z) * hk[1, 0] * r[..., 0, 1]
    else:
        val = -2j * t * theta_prime(z) * hk[0, 1] * r[..., 1, 0]
    # integrand including path measure
    return zeta, val * dz_ds, z


for k, s, alpha, tag in ((1, 1, 3 * np.pi / 8, "k1 lower-outer"),
                         (2, 2, np.pi - 0.12, "k2 seam-ish"),
                         (0, 0, 0.0, "k0 down-hug (good)")):
    zeta, f, z = profile(k, s, alpha)
    print(f"=== {tag}: alpha={alpha:.3f}")
    for j in range(0, 40, 5):
        print(f"  |zeta|={abs(zeta[j]):6.2f} z={z[j]:+.3f} |f|={abs(f[j]):.3e}")
