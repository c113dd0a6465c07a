import numpy as np
from p2tau.monodromy import derived_params
from p2tau.geometry import phase_points, theta_prime
from p2tau.corrections import _scaled_block, _trace_ray_points, _inv2
from p2tau.jump import _wronskian_block, _hprod, model_stokes_h
from p2tau.specialfn import pcf_d


def blk_alt_raw(nu, zv, which):
    f = pcf_d(-nu - 1.0, -1j * zv)
    fp = -0.5 * zv * f + 1j * pcf_d(-nu, -1j * zv)
    if which == 1:
        g = pcf_d(nu, zv)
        gp = nu * pcf_d(nu - 1.0, zv) - 0.5 * zv * g
    else:
        g = pcf_d(nu, -zv)
        gp = -nu * pcf_d(nu - 1.0, -zv) - 0.5 * zv * g
    return np.array([[f, g], [fp, gp]])


def adapted_block(nu, zeta, which):
    """Mantissa-stripped block for sector 'which' plus zeta-derivative."""
    bm, bm_d = _scaled_block(nu, -zeta)
    if which == 1:
        bp, bp_d = _scaled_block(nu, zeta)
        b = np.empty_like(bm)
        b[..., 0, 0] = bm[..., 0, 0]
        b[..., 1, 0] = -bm[..., 1, 0]
        b[..., 0, 1] = bp[..., 0, 1]
        b[..., 1, 1] = bp[..., 1, 1]
        b_d = np.empty_like(bm)
        b_d[..., 0, 0] = -bm_d[..., 0, 0]
        b_d[..., 1, 0] = bm_d[..., 1, 0]
        b_d[..., 0, 1] = bp_d[..., 0, 1]
        b_d[..., 1, 1] = bp_d[..., 1, 1]
        return b, b_d
    # which == 2: full reflected block sigma3 * Bhat(-zeta)
    b = bm.copy()
    b[..., 1, :] *= -1.0
    b_d = -bm_d.copy()
    b_d[..., 1, :] *= -1.0
    return b, b_d


def p_factor_basis(z, t, mp, which):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    geo = phase_points(z, t)
    zeta = geo.zeta
    nu, h = mp.nu, mp.h
    if which == 0:
        bhat, bhat_d = _scaled_block(nu, zeta)
    else:
        bhat, bhat_d = adapted_block(nu, zeta, which)
    lam = nu * (geo.log_zeta + geo.log_m)
    lam_t = nu / (2.0 * t)
    kappa = np.exp(1j * t / 3.0) / h
    zeta_t = zeta / (2.0 * t)
    e_p = np.exp(lam) * kappa
    e_m2 = np.exp(-lam) / kappa
    f3 = np.zeros(z.shape + (2, 2), dtype=complex)
    f3[..., 0, 0] = 0.5 * zeta
    f3[..., 0, 1] = 1.0
    f3[..., 1, 0] = 1.0
    mid = f3 @ bhat
    p = mid.copy()
    p[..., 0, :] *= e_p[..., None]
    p[..., 1, :] *= e_m2[..., None]
    df3_t = np.zeros_like(f3)
    df3_t[..., 0, 0] = 0.5 * zeta_t
    mid_t = df3_t @ bhat + f3 @ (bhat_d * zeta_t[..., None, None])
    p_t = mid_t.copy()
    p_t[..., 0, :] *= e_p[..., None]
    p_t[..., 1, :] *= e_m2[..., None]
    p_t[..., 0, :] += p[..., 0, :] * (lam_t + 1j / 3.0)
    p_t[..., 1, :] -= p[..., 1, :] * (lam_t + 1j / 3.0)
    return p, p_t


def ray_integral(k, alpha, t, mp, n, zmax):
    which = k if k in (1, 2) else 0
    z, zeta, dz_ds, ws = _trace_ray_points(alpha, t, n, zmax)
    p, p_t = p_factor_basis(z, t, mp, which)
    q = _inv2(p) @ p_t
    q[..., 0, 0] += zeta**2 / (4 * t)
    q[..., 1, 1] -= zeta**2 / (4 * t)
    dph = np.diag([np.exp(0.5j * np.pi * (mp.nu + 1.0)), 1.0])
    rc = dph @ _hprod(mp, k)
    if which:
        zp = 2.5 * np.exp(1j * alpha)
        blk0 = _wronskian_block(mp.nu, np.atleast_1d(zp), False)[0][0]
        T = np.linalg.solve(blk0, blk_alt_raw(mp.nu, zp, which))
        rct = np.linalg.solve(T, rc)
        off = abs(rct[0, 1]) + abs(rct[1, 0])
        assert off < 1e-10 * (abs(rct[0, 0]) + abs(rct[1, 1])), off
        d1, d2 = rct[0, 0], rct[1, 1]
    else:
        rc3 = dph @ _hprod(mp, 0 if k == 0 else 4)
        assert abs(rc3[0, 1]) + abs(rc3[1, 0]) < 1e-12, rc3
        d1, d2 = rc3[0, 0], rc3[1, 1]
    hk = model_stokes_h(k, mp)
    if k % 2 == 0:
        entry = q[..., 0, 1] * np.exp(-zeta**2 / 2) * (d2 / d1)
        val = 2j * t * theta_prime(z) * hk[1, 0] * entry
    else:
        entry = q[..., 1, 0] * np.exp(zeta**2 / 2) * (d1 / d2)
        val = -2j * t * theta_prime(z) * hk[0, 1] * entry
    return complex(np.sum(val * dz_ds * ws) / (2j * np.pi))


DIRS = {0: 0.0, 1: 3 * np.pi / 8, 2: np.pi - 0.12, 3: -5 * np.pi / 8}
for s1, s3, t in ((2j, 1j, 2.0), (2j, 1j, 3.1),
                  (0.6 + 0.3j, -0.2 + 0.5j, 2.4)):
    mp = derived_params(s1, s3)
    target = 2j * mp.nu / 3 + mp.nu**2 / t
    vals = [ray_integral(k, DIRS[k], t, mp, 260, 12.0) for k in range(4)]
    tot = sum(vals)
    mis = target - tot
    print(f"s1={s1} s3={s3} t={t}: total={tot:+.8f}")
    print(f"   per-ray: " + "  ".join(f"{v:+.6f}" for v in vals))
    print(f"   target={target:+.8f}  mismatch={mis:+.8f}  "
          f"nu^2/2t={mp.nu**2/(2*t):+.8f}  diff={abs(mis - mp.nu**2/(2*t)):.2e}")
