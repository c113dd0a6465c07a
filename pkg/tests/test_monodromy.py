"""Tests for the Stokes-data container and the derived parameter map.

Gamma-based quantities are cross-checked against mpmath (50 significant
digits) as an independent oracle.
"""
import numpy as np
import pytest

from p2tau.monodromy import (
    DegenerateStokesError,
    MonodromyParams,
    StokesData,
    derived_params,
    stokes_from_pair,
)

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 50


def _random_admissible_pairs(rng, n):
    """Draws n Stokes pairs away from the degenerate loci."""
    pairs = []
    while len(pairs) < n:
        s1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        s3 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        prod = s1 * s3
        if abs(prod) < 0.05 or abs(prod - 1.0) < 0.05:
            continue
        w = 1.0 - prod
        if w.real < 0 and abs(w.imag) < 0.05:
            continue
        pairs.append((s1, s3))
    return pairs


class TestStokesFromPair:
    def test_canonical_pair(self):
        sd = stokes_from_pair(2.0j, 1.0j)
        assert sd.s2 == pytest.approx(1.0j, abs=1e-15)

    def test_antisymmetric_pair(self):
        sd = stokes_from_pair(1.0, -1.0)
        assert sd.s2 == pytest.approx(0.0, abs=1e-15)

    def test_zero_product_rejected(self):
        with pytest.raises(DegenerateStokesError):
            stokes_from_pair(0.0, 1.5j)

    def test_unit_product_rejected(self):
        with pytest.raises(DegenerateStokesError):
            stokes_from_pair(2.0, 0.5)

    def test_branch_cut_rejected(self):
        # s1*s3 = 4 puts 1 - s1*s3 = -3 on the principal-log cut.
        with pytest.raises(DegenerateStokesError):
            stokes_from_pair(2.0, 2.0)

    def test_error_is_value_error(self):
        with pytest.raises(ValueError):
            stokes_from_pair(0.0, 1.0)

    def test_cyclic_constraint_random(self):
        rng = np.random.default_rng(7)
        for s1, s3 in _random_admissible_pairs(rng, 100):
            sd = stokes_from_pair(s1, s3)
            assert abs(sd.constraint_residual()) < 1e-12

    def test_container_is_frozen(self):
        sd = stokes_from_pair(2.0j, 1.0j)
        with pytest.raises(Exception):
            sd.s1 = 0.0


class TestDerivedParams:
    def test_nu_product_minus_two(self):
        p = derived_params(2.0j, 1.0j)   # s1*s3 = -2
        assert p.nu == pytest.approx(1j * np.log(3.0) / (2 * np.pi),
                                     abs=1e-15)

    def test_nu_product_minus_one(self):
        p = derived_params(1.0, -1.0)    # s1*s3 = -1
        assert p.nu == pytest.approx(1j * np.log(2.0) / (2 * np.pi),
                                     abs=1e-15)

    def test_nu_real_part_in_open_strip(self):
        rng = np.random.default_rng(11)
        for s1, s3 in _random_admissible_pairs(rng, 100):
            p = derived_params(s1, s3)
            assert -0.5 < p.nu.real < 0.5

    def test_h_squared_matches_definition(self):
        rng = np.random.default_rng(13)
        for s1, s3 in _random_admissible_pairs(rng, 50):
            p = derived_params(s1, s3)
            assert abs(p.h ** 2 - (-p.h1 / s3)) < 1e-14 * abs(p.h1 / s3)

    def test_h_identity_random(self):
        # 1 + h0*h1 = exp(2 pi i nu) on 100 random admissible pairs.
        rng = np.random.default_rng(17)
        for s1, s3 in _random_admissible_pairs(rng, 100):
            p = derived_params(s1, s3)
            target = np.exp(2j * np.pi * p.nu)
            assert abs(1.0 + p.h0 * p.h1 - target) < 1e-10

    def test_gamma_oracle_canonical_pair(self):
        p = derived_params(2.0j, 1.0j)
        nu = mpmath.mpc(p.nu)
        h0 = -1j * mpmath.sqrt(2 * mpmath.pi) / mpmath.gamma(nu + 1)
        h1 = (mpmath.sqrt(2 * mpmath.pi) * mpmath.exp(1j * mpmath.pi * nu)
              / mpmath.gamma(-nu))
        assert abs(p.h0 - complex(h0)) < 1e-12 * abs(complex(h0))
        assert abs(p.h1 - complex(h1)) < 1e-12 * abs(complex(h1))

    def test_nu_not_integer(self):
        rng = np.random.default_rng(19)
        for s1, s3 in _random_admissible_pairs(rng, 100):
            p = derived_params(s1, s3)
            if abs(p.nu.imag) < 1e-8:
                assert abs(p.nu.real - round(p.nu.real)) > 1e-8

    def test_s2_carried_through(self):
        p = derived_params(2.0j, 1.0j)
        assert p.s2 == pytest.approx(1.0j, abs=1e-15)

    def test_returns_monodromy_params(self):
        assert isinstance(derived_params(2.0j, 1.0j), MonodromyParams)

    def test_degenerate_propagates(self):
        with pytest.raises(DegenerateStokesError):
            derived_params(1.0, 0.0)


class TestTiming:
    def test_hundred_pairs_under_one_second(self):
        import time
        rng = np.random.default_rng(23)
        pairs = _random_admissible_pairs(rng, 100)
        start = time.perf_counter()
        for s1, s3 in pairs:
            derived_params(s1, s3)
        assert time.perf_counter() - start < 1.0
