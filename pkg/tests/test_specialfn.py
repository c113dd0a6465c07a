"""Tests for the special-function layer.

Expected values marked "oracle:" were computed with mpmath at 50 digits
and frozen here as literals; the random sweeps compare against a live
mpmath oracle at test time.
"""
import numpy as np
import pytest

mpmath = pytest.importorskip("mpmath")

from p2tau.specialfn import (
    DEFAULT_POLICY,
    PrecisionPolicy,
    gamma_complex,
    kummer_m,
    pcf_d,
    pcf_d_prime,
    pcf_d_scaled,
)

mpmath.mp.dps = 40


def mp_pcfd(nu, z):
    return complex(mpmath.pcfd(mpmath.mpc(nu), mpmath.mpc(z)))


def rel_err(got, want):
    want = complex(want)
    scale = max(abs(want), 1e-300)
    return abs(complex(got) - want) / scale


class TestGamma:
    def test_pinned_values(self):
        assert rel_err(gamma_complex(1.0), 1.0) < 1e-12
        assert rel_err(gamma_complex(0.5), np.sqrt(np.pi)) < 1e-12
        assert abs(abs(gamma_complex(1j)) - 0.5215640468649398) < 1e-10

    def test_against_mpmath_random(self):
        rng = np.random.default_rng(11)
        pts = rng.uniform(-4, 4, 60) + 1j * rng.uniform(-4, 4, 60)
        pts = pts[np.abs(pts - np.round(pts.real)) > 0.05]
        for z in pts:
            want = complex(mpmath.gamma(mpmath.mpc(z)))
            assert rel_err(gamma_complex(z), want) < 1e-11

    def test_vectorized(self):
        z = np.array([1.0, 0.5, 2.0 + 1j])
        out = gamma_complex(z)
        assert out.shape == (3,)
        assert rel_err(out[2], complex(mpmath.gamma(mpmath.mpc(2 + 1j)))) < 1e-11


class TestKummer:
    def test_pinned_value(self):
        # oracle: mpmath.hyp1f1(0.3+0.1j, 1.2, 2-1j) at 50 digits
        want = 2.0405260146501072337 - 0.58325381036484568614j
        got = kummer_m(0.3 + 0.1j, 1.2, 2.0 - 1.0j)
        assert rel_err(got, want) < 1e-12

    def test_at_zero_is_one(self):
        assert kummer_m(0.7j, 0.5, 0.0) == 1.0 + 0.0j

    def test_kummer_transformation(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            b = rng.choice([0.5, 1.5])
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            lhs = kummer_m(a, b, z)
            rhs = np.exp(z) * kummer_m(b - a, b, -z)
            assert rel_err(lhs, rhs) < 1e-11

    def test_nonconvergence_raises(self):
        tiny = PrecisionPolicy(max_terms=4)
        with pytest.raises(RuntimeError):
            kummer_m(1.0, 0.5, 40.0 + 3.0j, tiny)


class TestPcfPinned:
    def test_spec_examples(self):
        assert rel_err(pcf_d(0.0, 2.0), np.exp(-1.0)) < 1e-11
        assert abs(pcf_d(1.0, 0.0)) < 1e-14
        nu = 0.3 + 0.2j
        want = 2.0 ** (nu / 2) * np.sqrt(np.pi) / complex(
            mpmath.gamma((1 - mpmath.mpc(nu)) / 2))
        assert rel_err(pcf_d(nu, 0.0), want) < 1e-11
        # oracle: D_{0.3+0.2i}(0) at 50 digits
        assert rel_err(pcf_d(nu, 0.0),
                       0.78814518511786762256 - 0.17640771219929447532j) < 1e-11

    def test_route_anchors(self):
        # oracle: mpmath.pcfd at 40+ digits, one anchor per dispatch route
        anchors = [
            # (nu, z, expected, tol) -- series route
            (0.3 + 0.2j, 1.1 - 0.7j,
             0.98092181076615638284 + 0.32419366857686197619j, 1e-11),
            (-1.2 + 0.4j, 3.9j,
             0.87002442119889955339 - 5.1263498738594172584j, 1e-11),
            # compensated-series band, Re z^2 < 0 (z = 6 e^{1.2i})
            (0.7 - 0.3j, 2.174146527230365 + 5.5922345167980865j,
             3351.0276997917265813 + 1840.9629447073583015j, 1e-10),
            # integral band, small angle (z = 6 e^{0.3i})
            (0.7 - 0.3j, 5.732018934753465 + 1.7731212399702459j,
             0.001471062511809257006 + 0.0017541276401417650034j, 1e-9),
            # reflection band (z = 6 e^{2.9i})
            (-0.4 + 0.9j, -5.825748991462442 + 1.4354959754392169j,
             2862.5810309042190373 - 1370.8619828122919701j, 1e-9),
            # Poincare route (z = 9 e^{-i})
            (1.5 + 0.5j, 4.862720753096955 - 7.573238863534426j,
             136996.05249339784968 - 152200.44408776690745j, 1e-10),
            # connection route (z = 11 e^{2.7i})
            (-0.8 - 0.6j, -9.944793562768400 + 4.701178683892610j,
             -447135168.81071035162 - 301982920.71673592487j, 1e-9),
            # connection route near the negative real axis
            (0.2 + 1.1j, -8.0 + 0.4j,
             4044372.446697040389 + 850305.3241356875591j, 1e-9),
        ]
        for nu, z, want, tol in anchors:
            got = pcf_d(nu, z)
            assert rel_err(got, want) < tol, (nu, z, got, want)


class TestPcfSweeps:
    def test_random_disc_against_mpmath(self):
        rng = np.random.default_rng(42)
        n = 120
        nu = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        r = rng.uniform(0.1, 8.0, n)
        ang = rng.uniform(-np.pi, np.pi, n)
        z = r * np.exp(1j * ang)
        got = pcf_d(nu, z)
        for k in range(n):
            want = mp_pcfd(nu[k], z[k])
            assert rel_err(got[k], want) < 2e-9, (nu[k], z[k])

    def test_far_field_against_mpmath(self):
        rng = np.random.default_rng(43)
        n = 40
        nu = rng.uniform(-0.6, 0.6, n) + 1j * rng.uniform(-1.5, 1.5, n)
        r = rng.uniform(8.0, 30.0, n)
        ang = rng.uniform(-0.6 * np.pi, 0.6 * np.pi, n)
        z = r * np.exp(1j * ang)
        got = pcf_d_scaled(nu, z)
        for k in range(n):
            zz, nn = mpmath.mpc(z[k]), mpmath.mpc(nu[k])
            want = mpmath.pcfd(nn, zz) * mpmath.exp(
                zz * zz / 4 - nn * mpmath.log(zz))
            assert rel_err(got[k], complex(want)) < 5e-9, (nu[k], z[k])

    def test_recurrence_invariant(self):
        # D_{nu+1} - z D_nu + nu D_{nu-1} = 0
        rng = np.random.default_rng(7)
        n = 200
        nu = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        z = rng.uniform(-8, 8, n) + 1j * rng.uniform(-8, 8, n)
        keep = np.abs(z) <= 8.0
        nu, z = nu[keep], z[keep]
        d_up = pcf_d(nu + 1.0, z)
        d_mid = pcf_d(nu, z)
        d_dn = pcf_d(nu - 1.0, z)
        resid = d_up - z * d_mid + nu * d_dn
        scale = np.maximum(np.abs(d_up), np.maximum(np.abs(z * d_mid), 1.0))
        assert np.max(np.abs(resid) / scale) < 1e-9

    def test_wronskian_invariant(self):
        # W[D_{-nu-1}(i zeta), D_nu(zeta)] = i e^{-i pi nu / 2}
        # Sampling is kept inside |zeta| <= 4: the two products are of
        # size e^{|zeta|^2/2} and cancel to O(1), so farther out the
        # identity is not testable at 1e-9 in double precision no matter
        # how accurate the factors are.
        rng = np.random.default_rng(8)
        for _ in range(60):
            nu = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            r, ang = rng.uniform(0.1, 4.0), rng.uniform(-np.pi, np.pi)
            zeta = r * np.exp(1j * ang)
            u = pcf_d(-nu - 1.0, 1j * zeta)
            du = 1j * pcf_d_prime(-nu - 1.0, 1j * zeta)
            q = pcf_d(nu, zeta)
            dq = pcf_d_prime(nu, zeta)
            w = u * dq - du * q
            want = 1j * np.exp(-0.5j * np.pi * nu)
            assert abs(w - want) / abs(want) < 1e-9

    def test_ode_residual(self):
        # second derivative from the ladder satisfies the Weber equation
        rng = np.random.default_rng(9)
        n = 80
        nu = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        z = rng.uniform(-7, 7, n) + 1j * rng.uniform(-3, 3, n)
        d0 = pcf_d(nu, z)
        d1 = pcf_d(nu - 1.0, z)
        d2 = pcf_d(nu - 2.0, z)
        dp = nu * d1 - 0.5 * z * d0
        dpp = nu * ((nu - 1.0) * d2 - 0.5 * z * d1) - 0.5 * d0 - 0.5 * z * dp
        resid = dpp - (0.25 * z * z - nu - 0.5) * d0
        scale = np.maximum(np.abs(dpp), np.maximum(np.abs(d0), 1.0))
        assert np.max(np.abs(resid) / scale) < 1e-6

    def test_reflection_identity(self):
        # D_nu(z) in terms of D_nu(-z) and D_{-nu-1}(+iz)
        rng = np.random.default_rng(10)
        for _ in range(40):
            nu = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
            z = complex(rng.uniform(0.2, 5), rng.uniform(0.2, 5))
            lhs = pcf_d(nu, z)
            rhs = (np.exp(-1j * np.pi * nu) * pcf_d(nu, -z)
                   + np.sqrt(2 * np.pi) / complex(mpmath.gamma(-mpmath.mpc(nu)))
                   * np.exp(-0.5j * np.pi * (nu + 1.0)) * pcf_d(-nu - 1.0, 1j * z))
            scale = max(abs(lhs), abs(rhs), 1.0)
            assert abs(lhs - rhs) / scale < 1e-10

    def test_derivative_matches_mpmath(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            nu = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            got = pcf_d_prime(nu, z)
            h = 1e-6
            want = (mp_pcfd(nu, z + h) - mp_pcfd(nu, z - h)) / (2 * h)
            scale = max(abs(want), 1.0)
            assert abs(got - want) / scale < 1e-7

    def test_scaled_matches_raw_in_disc(self):
        rng = np.random.default_rng(13)
        nu = rng.uniform(-1, 1, 30) + 1j * rng.uniform(-1, 1, 30)
        z = 3.0 * np.exp(1j * rng.uniform(-np.pi, np.pi, 30))
        raw = pcf_d(nu, z)
        scaled = pcf_d_scaled(nu, z) * np.exp(-0.25 * z * z + nu * np.log(z))
        assert np.max(np.abs(raw - scaled) / np.abs(raw)) < 1e-12

    def test_runtime_budget(self):
        import time
        rng = np.random.default_rng(14)
        nu = rng.uniform(-2, 2, 200) + 1j * rng.uniform(-2, 2, 200)
        z = rng.uniform(-8, 8, 200) + 1j * rng.uniform(-8, 8, 200)
        start = time.perf_counter()
        pcf_d(nu, z)
        assert time.perf_counter() - start < 5.0
