"""Fixed-zeta vs fixed-z time-derivative variants of the ray identity.

Variant A (fixed z):    M = Phi^{-1} Phi_t                     -> got 2i nu/3 + nu^2/2t
Variant B (fixed zeta): M_B = Phi^{-1}(Phi_t - Phi_z * c_R),   c_R = (theta+1/3)/(t theta')
Hypothesis: variant B total = 2i nu/3 + nu^2/t  (the paper's constant)

Consistency requirement for the tau assembly: the combination
  -int F~ - bracket  must be frame independent, i.e.
  int (F~_fzeta - F~_fz) over iR = -(nu^2/t)     [bracket difference both halves]
where for the left family the chain factor is c_L = (theta-1/3)/(t theta').
"""
import numpy as np
import warnings
warnings.filterwarnings("ignore")

from p2tau.monodromy import derived_params
from p2tau.jump import _parametrix_right, model_stokes_h, parametrix_pair_with_derivs
from p2tau.geometry import theta, theta_prime
from p2tau.corrections import _trace_ray_points

DIRS = {0: 0.0, 1: 3 * np.pi / 8, 2: np.pi - 0.12, 3: -5 * np.pi / 8}


def ray_integral_variant(k, t, mp, n, zeta_max, fixed_zeta):
    z, zeta, dz_ds, ws = _trace_ray_points(DIRS[k], t, n, zeta_max)
    phi, phi_z, phi_t = _parametrix_right(z, t, mp, sector=k, with_derivs=True)
    dphi = phi_t.copy()
    if fixed_zeta:
        c_r = ((theta(z) + 1.0 / 3.0) / (t * theta_prime(z)))[..., None, None]
        dphi = phi_t - phi_z * c_r
    m = np.linalg.solve(phi, dphi)
    tht, thp = theta(z), theta_prime(z)
    hk = model_stokes_h(k, mp)
    if k % 2 == 0:
        val = 2j * t * thp * hk[1, 0] * mp.h**2 * np.exp(2j * t * tht) * m[..., 0, 1]
    else:
        val = -2j * t * thp * hk[0, 1] * mp.h**-2 * np.exp(-2j * t * tht) * m[..., 1, 0]
    return np.sum(ws * val * dz_ds) / (2j * np.pi)


def ftilde_diff_integral(t, mp, n=400, span=40.0):
    x, w = np.polynomial.legendre.leggauss(n)
    y = span * x          # z = i y, dz = i dy
    z = 1j * y
    r, r_z, r_t, l, l_z, l_t = parametrix_pair_with_derivs(z, t, mp)
    c_r = ((theta(z) + 1.0 / 3.0) / (t * theta_prime(z)))[..., None, None]
    c_l = ((theta(z) - 1.0 / 3.0) / (t * theta_prime(z)))[..., None, None]
    a = np.linalg.solve(r, r_z)                     # R^{-1} R'
    diff = np.linalg.solve(l, -l_z * c_l) - np.linalg.solve(r, -r_z * c_r)
    integrand = np.trace(a @ diff, axis1=-2, axis2=-1)
    return np.sum(span * w * integrand * 1j) / (2j * np.pi)


ZMAX = {0: 8.0, 1: 7.0, 2: 7.0, 3: 8.0}
for s1, s3, t in ((2j, 1j, 2.0), (0.6 + 0.3j, -0.2 + 0.5j, 2.4)):
    mp = derived_params(s1, s3)
    tot_b = sum(ray_integral_variant(k, t, mp, 200, ZMAX[k], True) for k in range(4))
    tgt_b = 2j * mp.nu / 3 + mp.nu**2 / t
    print(f"s1={s1} s3={s3} t={t}:")
    print(f"  variant-B total = {tot_b:+.10f}   target(nu^2/t) = {tgt_b:+.10f}"
          f"   err = {abs(tot_b - tgt_b):.2e}")
    fd = ftilde_diff_integral(t, mp)
    fd2 = ftilde_diff_integral(t, mp, n=600, span=60.0)
    need = -(mp.nu**2 / t)
    print(f"  int(F~_fzeta - F~_fz) = {fd:+.10f}  [stab {abs(fd - fd2):.1e}]"
          f"   need = {need:+.10f}   err = {abs(fd - need):.2e}")
