"""Stokes matrices, local parametrices and the imaginary-axis jump entries.

The jump matrix on the imaginary axis is built from two local solutions:
a right parametrix around z = 1/2 and a left parametrix around z = -1/2
(obtained from the right one through the symmetry z -> -z).  Its entries
A, B, C, D have closed forms as bilinear combinations of parabolic
cylinder functions of the conformal coordinates zeta and xi.

Numerically the entries are assembled from *scaled* parabolic cylinder
mantissas; every exponentially large factor is combined analytically
using zeta^2 + xi^2 = -8 i t / 3, so the assembly never overflows and the
entries tend to their limits (A, D -> phases of modulus 1, B, C -> 0)
uniformly along the contour.  This representation converges for
Re t > 0; far outside that sector the underlying contour would have to
be rotated, and the entries grow instead of decaying (diagnosed
downstream by the winding/normalization checks).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import PhaseGeometry, phase_points, theta, theta_prime
from .monodromy import MonodromyParams
from .specialfn import pcf_d, pcf_d_prime, pcf_d_scaled

_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]])


def stokes_matrix(k: int, z, t, sd) -> np.ndarray:
    """Original Stokes matrix S_k, k = 1..6, alternately lower/upper.

    Odd k are lower triangular with exponent e^{2 i t theta(z)}, even k
    upper triangular with e^{-2 i t theta(z)}; s_{k+3} = -s_k.
    """
    if not 1 <= k <= 6:
        raise IndexError(f"Stokes index k = {k} outside 1..6")
    s = [None, sd.s1, sd.s2, sd.s3, -sd.s1, -sd.s2, -sd.s3][k]
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    ex = np.exp((2j if k % 2 else -2j) * t * theta(z))
    out = np.zeros(z.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = 1.0
    if k % 2:
        out[..., 1, 0] = s * ex
    else:
        out[..., 0, 1] = s * ex
    return out


def model_stokes_h(k: int, mp: MonodromyParams) -> np.ndarray:
    """Constant model-problem Stokes matrix H_k (k = 0..3) or H_D (k = 4)."""
    nu, h0, h1 = mp.nu, mp.h0, mp.h1
    if k == 0:
        return np.array([[1.0, 0.0], [h0, 1.0]], dtype=complex)
    if k == 1:
        return np.array([[1.0, h1], [0.0, 1.0]], dtype=complex)
    if k in (2, 3):
        rot = np.exp(1j * np.pi * (nu + 0.5))
        base = model_stokes_h(k - 2, mp)
        conj = base.copy()
        conj[1, 0] *= rot ** (-2)
        conj[0, 1] *= rot ** 2
        return conj
    if k == 4:
        e = np.exp(2j * np.pi * nu)
        return np.array([[e, 0.0], [0.0, 1.0 / e]], dtype=complex)
    raise IndexError(f"model Stokes index k = {k} outside 0..4")


def sector_jump_g(k: int, z, t, mp: MonodromyParams) -> np.ndarray:
    """Conjugated sector jump G_r^{(k)} = e^{-i t theta s3} h^{-s3} H_k h^{s3} e^{i t theta s3}.

    Lower triangular for k = 0, 2; upper for k = 1, 3; constant diagonal
    for k = 4.  Zero entries are exact zeros.
    """
    if not 0 <= k <= 4:
        raise IndexError(f"sector index k = {k} outside 0..4")
    hk = model_stokes_h(k, mp)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.zeros(z.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = hk[0, 0]
    out[..., 1, 1] = hk[1, 1]
    if k == 4:
        return out
    ex = np.exp(2j * t * theta(z))
    if k % 2 == 0:
        out[..., 1, 0] = hk[1, 0] * mp.h ** 2 * ex
    else:
        out[..., 0, 1] = hk[0, 1] * mp.h ** (-2) / ex
    return out


# ---------------------------------------------------------------------------
# scaled parabolic-cylinder mantissas on the two conformal coordinates

@dataclass
class _Mantissas:
    """Scaled parabolic cylinder data at one coordinate array w.

    With L = Log w (principal):
      u_hat: D_{-nu}(i w)   = u_hat exp(+w^2/4 - nu Log(iw))
      d_hat: D_{-nu-1}(i w) = d_hat exp(+w^2/4 - (nu+1) Log(iw))
      q_hat: D_nu(w)        = q_hat exp(-w^2/4 + nu Log w)
      v_hat: D_{nu-1}(w)    = v_hat exp(-w^2/4 + (nu-1) Log w)
    The *_d fields are d/dw of the mantissas (ladder identities).
    """

    u_hat: np.ndarray
    d_hat: np.ndarray
    q_hat: np.ndarray
    v_hat: np.ndarray
    u_hat_d: np.ndarray
    d_hat_d: np.ndarray
    q_hat_d: np.ndarray
    v_hat_d: np.ndarray
    log_pr: np.ndarray       # principal Log w
    log_pr_iw: np.ndarray    # principal Log (i w)


def _mantissas(nu: complex, w: np.ndarray) -> _Mantissas:
    n = w.size
    iw = 1j * w
    orders = np.concatenate([
        np.full(n, -nu), np.full(n, -nu - 1.0),
        np.full(n, nu), np.full(n, nu - 1.0)])
    args = np.concatenate([iw, iw, w, w])
    g = pcf_d_scaled(orders, args)
    u_hat, d_hat, q_hat, v_hat = g[:n], g[n:2 * n], g[2 * n:3 * n], g[3 * n:]
    u_hat_d = (nu / w) * (u_hat - d_hat)
    d_hat_d = w * (u_hat - d_hat) + (nu + 1.0) * d_hat / w
    q_hat_d = (nu / w) * (v_hat - q_hat)
    v_hat_d = w * (v_hat - q_hat) - (nu - 1.0) * v_hat / w
    return _Mantissas(u_hat, d_hat, q_hat, v_hat,
                      u_hat_d, d_hat_d, q_hat_d, v_hat_d,
                      np.log(w), np.log(iw))


@dataclass
class JumpEntries:
    """Closed-form jump entries at nodes z for a fixed t."""

    z: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray


@dataclass
class JumpDerivatives:
    """Entries together with analytic z- and t-derivatives."""

    z: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    A_z: np.ndarray
    B_z: np.ndarray
    C_z: np.ndarray
    A_t: np.ndarray
    B_t: np.ndarray
    C_t: np.ndarray
    D_z: np.ndarray
    D_t: np.ndarray


class JumpField:
    """Jump entries (and derivatives) as functions of z for fixed (t, params).

    Valid in the open strip |Re z| < 1/2 around the imaginary axis
    (limited by the branch points at +-1/2); accuracy is verified to
    ~1e-14 out to |Re z| = 0.44, covering every shifted contour used by
    the determinant and correction integrals.
    """

    def __init__(self, t, params: MonodromyParams):
        self.t = complex(t)
        self.params = params

    # -- core assembly ------------------------------------------------

    def _assemble(self, z: np.ndarray, with_derivs: bool):
        t, mp = self.t, self.params
        nu, h = mp.nu, mp.h
        geo = phase_points(z, t)
        mz = _mantissas(nu, geo.zeta)
        mx = _mantissas(nu, geo.xi)

        # bounded branch phases (z- and t-derivative free)
        a_z = geo.log_zeta - mz.log_pr_iw
        a_x = geo.log_xi - mx.log_pr_iw
        b_z = geo.log_zeta - mz.log_pr
        b_x = geo.log_xi - mx.log_pr
        c_z = geo.log_zeta + mz.log_pr_iw
        c_x = geo.log_xi + mx.log_pr_iw

        e_pi_nu = np.exp(-1j * np.pi * nu)
        e_2pi_nu = np.exp(2j * np.pi * nu)
        h2, h4 = h ** 2, h ** 4

        # A = K1 u(zeta) u(xi) e^{E1} + K2 v(zeta) v(xi) e^{E2}
        K1 = e_pi_nu
        E1 = nu * (a_z + a_x)
        K2 = nu ** 2 / h4 * e_2pi_nu
        E2 = 4j * t / 3.0 + nu * (b_z + b_x) + (2.0 * nu - 1.0) * (mz.log_pr + mx.log_pr)
        A1 = K1 * mz.u_hat * mx.u_hat * np.exp(E1)
        A2 = K2 * mz.v_hat * mx.v_hat * np.exp(E2)
        A = A1 + A2

        # B = K3 u(zeta) d(xi) e^{E3} + K4 v(zeta) q(xi) e^{E4}
        K3 = 1j * h2 * e_pi_nu
        E3 = (2.0 * nu * geo.log_m + nu * a_z - nu * c_x - mx.log_pr_iw
              - 2j * t / 3.0)
        K4 = nu / h2 * e_2pi_nu
        E4 = (2.0 * nu * geo.log_m + nu * b_z - nu * b_x
              + (2.0 * nu - 1.0) * mz.log_pr + 2j * t / 3.0)
        B1 = K3 * mz.u_hat * mx.d_hat * np.exp(E3)
        B2 = K4 * mz.v_hat * mx.q_hat * np.exp(E4)
        B = B1 + B2

        # C(z) = B(-z): same formula with zeta <-> xi and log m -> -log m
        E3c = (-2.0 * nu * geo.log_m + nu * a_x - nu * c_z - mz.log_pr_iw
               - 2j * t / 3.0)
        E4c = (-2.0 * nu * geo.log_m + nu * b_x - nu * b_z
               + (2.0 * nu - 1.0) * mx.log_pr + 2j * t / 3.0)
        C1 = K3 * mx.u_hat * mz.d_hat * np.exp(E3c)
        C2 = K4 * mx.v_hat * mz.q_hat * np.exp(E4c)
        C = C1 + C2

        # D = K5 d(zeta) d(xi) e^{E5} + K6 q(zeta) q(xi) e^{E6}
        K5 = -h4 * e_pi_nu
        E5 = -nu * (c_z + c_x) - mz.log_pr_iw - mx.log_pr_iw - 4j * t / 3.0
        K6 = e_2pi_nu
        E6 = -nu * (b_z + b_x)
        D1 = K5 * mz.d_hat * mx.d_hat * np.exp(E5)
        D2 = K6 * mz.q_hat * mx.q_hat * np.exp(E6)
        D = D1 + D2

        if not with_derivs:
            return JumpEntries(z=z, A=A, B=B, C=C, D=D)

        # chain-rule scaffolding
        zeta, xi = geo.zeta, geo.xi
        lz_dz = geo.zeta_dz / zeta          # d/dz of Log zeta (any branch)
        lx_dz = geo.xi_dz / xi
        lm_dz = geo.m_dz / geo.m
        inv2t = 1.0 / (2.0 * t)

        # A derivatives
        A1_z = K1 * np.exp(E1) * (mz.u_hat_d * geo.zeta_dz * mx.u_hat
                                  + mz.u_hat * mx.u_hat_d * geo.xi_dz)
        A1_t = K1 * np.exp(E1) * (mz.u_hat_d * zeta * inv2t * mx.u_hat
                                  + mz.u_hat * mx.u_hat_d * xi * inv2t)
        E2_z = (2.0 * nu - 1.0) * (lz_dz + lx_dz)
        E2_t = 4j / 3.0 + (2.0 * nu - 1.0) / t
        A2_z = A2 * E2_z + K2 * np.exp(E2) * (mz.v_hat_d * geo.zeta_dz * mx.v_hat
                                              + mz.v_hat * mx.v_hat_d * geo.xi_dz)
        A2_t = A2 * E2_t + K2 * np.exp(E2) * (mz.v_hat_d * zeta * inv2t * mx.v_hat
                                              + mz.v_hat * mx.v_hat_d * xi * inv2t)
        A_z = A1_z + A2_z
        A_t = A1_t + A2_t

        # B derivatives
        E3_z = 2.0 * nu * lm_dz - (2.0 * nu + 1.0) * lx_dz
        E3_t = -(2.0 * nu + 1.0) * inv2t - 2j / 3.0
        E4_z = 2.0 * nu * lm_dz + (2.0 * nu - 1.0) * lz_dz
        E4_t = (2.0 * nu - 1.0) * inv2t + 2j / 3.0
        B1_z = B1 * E3_z + K3 * np.exp(E3) * (mz.u_hat_d * geo.zeta_dz * mx.d_hat
                                              + mz.u_hat * mx.d_hat_d * geo.xi_dz)
        B1_t = B1 * E3_t + K3 * np.exp(E3) * (mz.u_hat_d * zeta * inv2t * mx.d_hat
                                              + mz.u_hat * mx.d_hat_d * xi * inv2t)
        B2_z = B2 * E4_z + K4 * np.exp(E4) * (mz.v_hat_d * geo.zeta_dz * mx.q_hat
                                              + mz.v_hat * mx.q_hat_d * geo.xi_dz)
        B2_t = B2 * E4_t + K4 * np.exp(E4) * (mz.v_hat_d * zeta * inv2t * mx.q_hat
                                              + mz.v_hat * mx.q_hat_d * xi * inv2t)
        B_z = B1_z + B2_z
        B_t = B1_t + B2_t

        # C derivatives (mirror of B)
        E3c_z = -2.0 * nu * lm_dz - (2.0 * nu + 1.0) * lz_dz
        E3c_t = E3_t
        E4c_z = -2.0 * nu * lm_dz + (2.0 * nu - 1.0) * lx_dz
        E4c_t = E4_t
        C1_z = C1 * E3c_z + K3 * np.exp(E3c) * (mx.u_hat_d * geo.xi_dz * mz.d_hat
                                                + mx.u_hat * mz.d_hat_d * geo.zeta_dz)
        C1_t = C1 * E3c_t + K3 * np.exp(E3c) * (mx.u_hat_d * xi * inv2t * mz.d_hat
                                                + mx.u_hat * mz.d_hat_d * zeta * inv2t)
        C2_z = C2 * E4c_z + K4 * np.exp(E4c) * (mx.v_hat_d * geo.xi_dz * mz.q_hat
                                                + mx.v_hat * mz.q_hat_d * geo.zeta_dz)
        C2_t = C2 * E4c_t + K4 * np.exp(E4c) * (mx.v_hat_d * xi * inv2t * mz.q_hat
                                                + mx.v_hat * mz.q_hat_d * zeta * inv2t)
        C_z = C1_z + C2_z
        C_t = C1_t + C2_t

        # D derivatives
        E5_z = -(2.0 * nu + 1.0) * (lz_dz + lx_dz)
        E5_t = -(2.0 * nu + 1.0) / t - 4j / 3.0
        D1_z = D1 * E5_z + K5 * np.exp(E5) * (mz.d_hat_d * geo.zeta_dz * mx.d_hat
                                              + mz.d_hat * mx.d_hat_d * geo.xi_dz)
        D1_t = D1 * E5_t + K5 * np.exp(E5) * (mz.d_hat_d * zeta * inv2t * mx.d_hat
                                              + mz.d_hat * mx.d_hat_d * xi * inv2t)
        D2_z = K6 * np.exp(E6) * (mz.q_hat_d * geo.zeta_dz * mx.q_hat
                                  + mz.q_hat * mx.q_hat_d * geo.xi_dz)
        D2_t = K6 * np.exp(E6) * (mz.q_hat_d * zeta * inv2t * mx.q_hat
                                  + mz.q_hat * mx.q_hat_d * xi * inv2t)
        D_z = D1_z + D2_z
        D_t = D1_t + D2_t

        return JumpDerivatives(z=z, A=A, B=B, C=C, D=D,
                               A_z=A_z, B_z=B_z, C_z=C_z,
                               A_t=A_t, B_t=B_t, C_t=C_t,
                               D_z=D_z, D_t=D_t)

    def entries(self, z) -> JumpEntries:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = self._assemble(z, with_derivs=False)
        det = out.A * out.D - out.B * out.C
        dev = float(np.max(np.abs(det - 1.0)))
        if dev > 1e-6:
            raise RuntimeError(
                f"jump entries violate AD - BC = 1 by {dev:.3e} "
                f"(branch inconsistency) at t = {self.t}")
        return out

    def entries_with_derivs(self, z) -> JumpDerivatives:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return self._assemble(z, with_derivs=True)


def jump_entries(z, t, params: MonodromyParams) -> JumpEntries:
    """Closed-form jump entries A, B, C, D at nodes z on (or near) iR."""
    return JumpField(t, params).entries(z)


# ---------------------------------------------------------------------------
# parametrices

def _wronskian_block(nu, zeta, with_derivs: bool):
    """[[u, v], [u', v']] with u = D_{-nu-1}(i zeta), v = D_nu(zeta).

    When with_derivs is set, also returns the zeta-derivative of the
    block (second derivatives via the Weber equation).
    """
    u = pcf_d(-nu - 1.0, 1j * zeta)
    v = pcf_d(nu, zeta)
    up = -(0.5 * zeta) * u - 1j * pcf_d(-nu, 1j * zeta)
    vp = nu * pcf_d(nu - 1.0, zeta) - (0.5 * zeta) * v
    blk = np.empty(zeta.shape + (2, 2), dtype=complex)
    blk[..., 0, 0], blk[..., 0, 1] = u, v
    blk[..., 1, 0], blk[..., 1, 1] = up, vp
    if not with_derivs:
        return blk, None
    coeff = 0.25 * zeta ** 2 - nu - 0.5
    dblk = np.empty_like(blk)
    dblk[..., 0, 0], dblk[..., 0, 1] = up, vp
    dblk[..., 1, 0], dblk[..., 1, 1] = coeff * u, coeff * v
    return blk, dblk


def _hprod(params: MonodromyParams, sector: int) -> np.ndarray:
    out = np.eye(2, dtype=complex)
    for j in range(sector):
        out = out @ model_stokes_h(j, params)
    return out


def _parametrix_right(z, t, params: MonodromyParams, sector: int,
                      with_derivs: bool):
    """Right parametrix (and optional z/t derivatives) at nodes z."""
    nu, h = params.nu, params.h
    geo = phase_points(z, t)
    zeta = geo.zeta

    lam = nu * (geo.log_zeta + geo.log_m)
    lam_z = nu * (geo.zeta_dz / zeta + geo.m_dz / geo.m)
    lam_t = nu / (2.0 * t)
    kappa = np.exp(1j * t / 3.0) / h

    f3 = np.zeros(z.shape + (2, 2), dtype=complex)
    f3[..., 0, 0] = 0.5 * zeta
    f3[..., 0, 1] = 1.0
    f3[..., 1, 0] = 1.0

    blk, dblk = _wronskian_block(nu, zeta, with_derivs)
    right_const = (np.diag([np.exp(0.5j * np.pi * (nu + 1.0)), 1.0])
                   @ _hprod(params, sector))
    f4 = blk @ right_const

    f5 = np.array([[h, 0.0], [0.0, 1.0 / h]], dtype=complex)
    tht = theta(z)
    f6 = np.zeros(z.shape + (2, 2), dtype=complex)
    f6[..., 0, 0] = np.exp(1j * t * tht)
    f6[..., 1, 1] = np.exp(-1j * t * tht)

    mid = f3 @ f4
    # the two leading diagonal factors combined
    left = np.zeros(z.shape + (2, 2), dtype=complex)
    left[..., 0, 0] = np.exp(lam) * kappa
    left[..., 1, 1] = np.exp(-lam) / kappa
    val = left @ mid @ f5 @ f6

    if not with_derivs:
        return val

    sig3 = np.diag([1.0, -1.0]).astype(complex)
    # z-derivative
    dleft_z = left * 0.0
    dleft_z[..., 0, 0] = left[..., 0, 0] * lam_z
    dleft_z[..., 1, 1] = -left[..., 1, 1] * lam_z
    df3_z = np.zeros_like(f3)
    df3_z[..., 0, 0] = 0.5 * geo.zeta_dz
    df4_z = (dblk * geo.zeta_dz[..., None, None]) @ right_const
    dmid_z = df3_z @ f4 + f3 @ df4_z
    df6_fact = (1j * t * theta_prime(z))[..., None, None] * (sig3 @ f6)
    val_z = (dleft_z @ mid @ f5 @ f6
             + left @ dmid_z @ f5 @ f6
             + left @ mid @ f5 @ df6_fact)

    # t-derivative
    zeta_t = zeta / (2.0 * t)
    dleft_t = left * 0.0
    dleft_t[..., 0, 0] = left[..., 0, 0] * (lam_t + 1j / 3.0)
    dleft_t[..., 1, 1] = left[..., 1, 1] * (-lam_t - 1j / 3.0)
    df3_t = np.zeros_like(f3)
    df3_t[..., 0, 0] = 0.5 * zeta_t
    df4_t = (dblk * zeta_t[..., None, None]) @ right_const
    dmid_t = df3_t @ f4 + f3 @ df4_t
    df6_t = (1j * tht)[..., None, None] * (sig3 @ f6)
    val_t = (dleft_t @ mid @ f5 @ f6
             + left @ dmid_t @ f5 @ f6
             + left @ mid @ f5 @ df6_t)
    return val, val_z, val_t


def parametrix_r0(z, t, params: MonodromyParams) -> np.ndarray:
    """Right parametrix in the zeroth sector; shape z.shape + (2, 2).

    Raises RuntimeError when det deviates from 1 by more than 1e-6
    (branch inconsistency indicator).
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    val = _parametrix_right(z, t, params, sector=0, with_derivs=False)
    det = val[..., 0, 0] * val[..., 1, 1] - val[..., 0, 1] * val[..., 1, 0]
    dev = float(np.max(np.abs(det - 1.0)))
    if dev > 1e-6:
        raise RuntimeError(
            f"right parametrix det deviates from 1 by {dev:.3e} "
            "(branch inconsistency)")
    return val


def parametrix_l4(z, t, params: MonodromyParams) -> np.ndarray:
    """Left parametrix in sector 4: sigma2 PhiR0(-z) H_D^{-1} sigma2."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    right = _parametrix_right(-z, t, params, sector=0, with_derivs=False)
    hd_inv = np.diag([np.exp(-2j * np.pi * params.nu),
                      np.exp(2j * np.pi * params.nu)])
    val = _SIGMA2 @ right @ hd_inv @ _SIGMA2
    det = val[..., 0, 0] * val[..., 1, 1] - val[..., 0, 1] * val[..., 1, 0]
    dev = float(np.max(np.abs(det - 1.0)))
    if dev > 1e-6:
        raise RuntimeError(
            f"left parametrix det deviates from 1 by {dev:.3e} "
            "(branch inconsistency)")
    return val


def parametrix_pair_with_derivs(z, t, params: MonodromyParams):
    """(PhiR0, dz, dt, PhiL4, dz, dt) at nodes z, for the correction terms."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    r_val, r_dz, r_dt = _parametrix_right(z, t, params, sector=0,
                                          with_derivs=True)
    m_val, m_dz, m_dt = _parametrix_right(-z, t, params, sector=0,
                                          with_derivs=True)
    hd_inv = np.diag([np.exp(-2j * np.pi * params.nu),
                      np.exp(2j * np.pi * params.nu)])
    l_val = _SIGMA2 @ m_val @ hd_inv @ _SIGMA2
    l_dz = -(_SIGMA2 @ m_dz @ hd_inv @ _SIGMA2)
    l_dt = _SIGMA2 @ m_dt @ hd_inv @ _SIGMA2
    return r_val, r_dz, r_dt, l_val, l_dz, l_dt


def parametrix_sector(z, t, params: MonodromyParams, side: str, sector: int,
                      with_derivs: bool = False):
    """General-sector parametrix; side 'right' or 'left'."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if side == "right":
        return _parametrix_right(z, t, params, sector, with_derivs)
    if side != "left":
        raise ValueError(f"unknown side {side!r}")
    if with_derivs:
        v, dz_, dt_ = _parametrix_right(-z, t, params, sector, True)
        return (_SIGMA2 @ v @ _SIGMA2, -(_SIGMA2 @ dz_ @ _SIGMA2),
                _SIGMA2 @ dt_ @ _SIGMA2)
    v = _parametrix_right(-z, t, params, sector, False)
    return _SIGMA2 @ v @ _SIGMA2
