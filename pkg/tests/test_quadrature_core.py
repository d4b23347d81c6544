import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sgclone import (
    CoherentState,
    DomainError,
    GaussianMixtureState,
    NoiseCovariance,
    SqueezedState,
    add_noise,
    coherent_fock_vector,
    displace,
    overlap_sq,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
amplitudes = st.builds(complex, finite, finite)


def fock_overlap_sq(a, b, cutoff=64):
    """Independent route: |<a|b>|^2 from truncated number-basis vectors."""
    va = coherent_fock_vector(a, cutoff).amplitudes
    vb = coherent_fock_vector(b, cutoff).amplitudes
    return abs(np.vdot(va, vb)) ** 2


class TestDisplace:
    def test_vacuum(self):
        assert displace(CoherentState(0), 1 + 0j).alpha == 1 + 0j

    def test_identity(self):
        assert displace(CoherentState(2 - 1j), 0).alpha == 2 - 1j

    def test_complex_addition(self):
        assert displace(CoherentState(1 + 0j), 1j).alpha == 1 + 1j

    def test_squeezed_keeps_r(self):
        out = displace(SqueezedState(1j, 0.3), 1.0)
        assert out.alpha == 1 + 1j and out.r == 0.3

    def test_mixture_displaces_center_only(self):
        mix = GaussianMixtureState(CoherentState(0), NoiseCovariance(0.5, 0.5))
        out = displace(mix, 2j)
        assert out.center.alpha == 2j
        assert out.noise == mix.noise

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            displace(CoherentState(0), complex("inf"))

    @given(amplitudes, amplitudes, amplitudes)
    def test_composition(self, alpha, beta, gamma):
        twice = displace(displace(CoherentState(alpha), beta), gamma)
        once = displace(CoherentState(alpha), beta + gamma)
        assert twice.alpha == pytest.approx(once.alpha, abs=1e-12)


class TestOverlapSq:
    def test_identical_states(self):
        assert overlap_sq(2 - 1j, 2 - 1j) == 1.0

    def test_unit_separation(self):
        # frozen from the Fock-vector inner product at cutoff 64
        assert overlap_sq(0, 1) == pytest.approx(0.36787944117144233, abs=1e-15)
        assert overlap_sq(0, 1) == pytest.approx(fock_overlap_sq(0, 1), abs=1e-12)

    def test_diagonal_separation(self):
        assert overlap_sq(0, 1 + 1j) == pytest.approx(0.1353352832366127, abs=1e-15)
        assert overlap_sq(0, 1 + 1j) == pytest.approx(fock_overlap_sq(0, 1 + 1j), abs=1e-12)

    def test_strictly_decreasing_in_separation(self):
        values = [overlap_sq(0, t * (1 + 2j)) for t in (0.0, 0.5, 1.0, 1.5)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @given(amplitudes, amplitudes)
    def test_symmetric_and_bounded(self, a, b):
        f = overlap_sq(a, b)
        assert f == overlap_sq(b, a)
        assert 0 <= f <= 1
        if a == b:
            assert f == 1.0
        elif abs(a - b) > 1e-6:
            assert f < 1.0


class TestNoise:
    def test_componentwise_sum_matches_one_to_four(self):
        total = add_noise(NoiseCovariance(0.5, 0.5), NoiseCovariance(0.25, 0.25))
        assert total == NoiseCovariance(0.75, 0.75)

    def test_zero_is_neutral(self):
        n = NoiseCovariance(0.3, 0.7)
        assert add_noise(NoiseCovariance(0, 0), n) == n

    def test_rejects_negative_variance(self):
        with pytest.raises(DomainError):
            NoiseCovariance(-0.1, 0.5)

    @given(st.tuples(finite, finite), st.tuples(finite, finite))
    def test_commutative(self, a, b):
        na = NoiseCovariance(abs(a[0]), abs(a[1]))
        nb = NoiseCovariance(abs(b[0]), abs(b[1]))
        assert add_noise(na, nb) == add_noise(nb, na)

    @given(st.fractions(0, 10), st.fractions(0, 10), st.fractions(0, 10))
    def test_associative_in_exact_arithmetic(self, a, b, c):
        na, nb, nc = (NoiseCovariance(v, v) for v in (a, b, c))
        assert add_noise(add_noise(na, nb), nc) == add_noise(na, add_noise(nb, nc))


class TestStates:
    def test_coherent_variances_are_half(self):
        assert CoherentState(3 - 2j).quadrature_variances() == (0.5, 0.5)

    def test_coherent_means(self):
        mx, mp = CoherentState(1 + 1j).quadrature_means()
        assert mx == pytest.approx(math.sqrt(2))
        assert mp == pytest.approx(math.sqrt(2))

    @given(st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
    def test_squeezed_uncertainty_product(self, r):
        vx, vp = SqueezedState(0, r).quadrature_variances()
        assert vx * vp == pytest.approx(0.25, rel=1e-14)

    def test_squeezed_r_zero_matches_coherent(self):
        assert SqueezedState(1j, 0.0).quadrature_variances() == (0.5, 0.5)

    def test_mixture_moments_are_additive(self):
        mix = GaussianMixtureState(CoherentState(1 + 1j), NoiseCovariance(0.5, 0.25))
        assert mix.quadrature_variances() == (1.0, 0.75)
        assert mix.quadrature_means() == CoherentState(1 + 1j).quadrature_means()

    def test_zero_noise_mixture_is_pure(self):
        assert GaussianMixtureState(CoherentState(0), NoiseCovariance(0, 0)).is_pure
