import math

import numpy as np
import pytest

from sgclone import (
    CoherentState,
    DensityMatrix,
    DimensionError,
    DomainError,
    GaussianMixtureState,
    NoiseCovariance,
    QuadratureGrid,
    SqueezedState,
    TruncationError,
    cascade_density_check,
    coherent_fock_vector,
    default_cutoff,
    fidelity_against,
    mixture_density_matrix,
    quadrature_moments,
    squeeze_fock_matrix,
    squeezed_fock_vector,
    squeezed_variant,
)

FAST_GRID = QuadratureGrid(21)


def make_mixture(alpha, var_x, var_p=None):
    var_p = var_x if var_p is None else var_p
    return GaussianMixtureState(CoherentState(alpha), NoiseCovariance(var_x, var_p))


class TestCoherentFockVector:
    def test_vacuum(self):
        vec = coherent_fock_vector(0, 8)
        assert vec.amplitudes[0] == 1.0
        assert np.all(vec.amplitudes[1:] == 0)

    def test_unit_norm_at_cutoff_32(self):
        assert abs(coherent_fock_vector(1, 32).norm_sq - 1.0) < 1e-12

    @pytest.mark.parametrize("alpha", [0.5, 1 + 1j, 2 - 1j, 3])
    def test_mean_photon_number(self, alpha):
        n_bar = abs(complex(alpha)) ** 2
        cutoff = math.ceil(n_bar + 10 * math.sqrt(n_bar + 1))
        vec = coherent_fock_vector(alpha, cutoff)
        observed = float(np.arange(cutoff + 1) @ (np.abs(vec.amplitudes) ** 2))
        assert abs(observed - n_bar) < 1e-10

    def test_insufficient_cutoff(self):
        with pytest.raises(TruncationError):
            coherent_fock_vector(4, 8)

    def test_amplitudes_are_immutable(self):
        vec = coherent_fock_vector(1, 16)
        with pytest.raises(ValueError):
            vec.amplitudes[0] = 0


class TestDefaultCutoff:
    def test_clamps_low(self):
        assert default_cutoff(CoherentState(0)) == 32

    def test_grows_with_center_and_noise(self):
        small = default_cutoff(CoherentState(0), NoiseCovariance(0.5, 0.5))
        large = default_cutoff(CoherentState(2 - 1j), NoiseCovariance(1, 1))
        assert 32 <= small < large <= 256

    def test_clamps_high(self):
        assert default_cutoff(CoherentState(12), NoiseCovariance(4, 4)) == 256


class TestMixtureDensityMatrix:
    def test_pure_vacuum_projector(self):
        rho = mixture_density_matrix(make_mixture(0, 0), cutoff=8)
        expected = np.zeros((9, 9)); expected[0, 0] = 1
        assert np.array_equal(rho.matrix, expected)

    def test_vacuum_population_at_half_noise(self):
        rho = mixture_density_matrix(make_mixture(0, 0.5))
        assert abs(rho.matrix[0, 0].real - 2 / 3) < 1e-6

    def test_vacuum_population_at_unit_noise(self):
        rho = mixture_density_matrix(make_mixture(0, 1.0))
        assert abs(rho.matrix[0, 0].real - 0.5) < 1e-6

    def test_physicality(self):
        rho = mixture_density_matrix(make_mixture(1 + 1j, 0.5))
        rho.validate()
        assert rho.hermiticity_defect() < 1e-12
        assert rho.min_eigenvalue() > -1e-10

    def test_cutoff_too_small(self):
        with pytest.raises(TruncationError):
            mixture_density_matrix(make_mixture(2 - 1j, 1.0), cutoff=16)


class TestFidelityAgainst:
    def test_projector_of_same_state(self):
        vec = coherent_fock_vector(1 + 1j, 40)
        rho = mixture_density_matrix(make_mixture(1 + 1j, 0), cutoff=40)
        assert fidelity_against(vec, rho) == pytest.approx(1.0, abs=1e-8)

    def test_vacuum_against_half_noise_mixture(self):
        cutoff = default_cutoff(CoherentState(0), NoiseCovariance(0.5, 0.5))
        vec = coherent_fock_vector(0, cutoff)
        rho = mixture_density_matrix(make_mixture(0, 0.5), cutoff=cutoff)
        assert abs(fidelity_against(vec, rho) - 2 / 3) < 1e-6

    def test_vacuum_against_third_noise_mixture(self):
        cutoff = default_cutoff(CoherentState(0), NoiseCovariance(1 / 3, 1 / 3))
        vec = coherent_fock_vector(0, cutoff)
        rho = mixture_density_matrix(make_mixture(0, 1 / 3), cutoff=cutoff)
        assert abs(fidelity_against(vec, rho) - 3 / 4) < 1e-6

    def test_cutoff_mismatch(self):
        with pytest.raises(DimensionError):
            fidelity_against(coherent_fock_vector(0, 16), mixture_density_matrix(make_mixture(0, 0.5)))


class TestQuadratureMoments:
    def test_vacuum(self):
        rho = mixture_density_matrix(make_mixture(0, 0), cutoff=8)
        moments = quadrature_moments(rho)
        assert moments == pytest.approx((0.0, 0.0, 0.5, 0.5), abs=1e-12)

    def test_half_noise_reaches_measurement_variance(self):
        moments = quadrature_moments(mixture_density_matrix(make_mixture(0, 0.5)))
        assert moments.var_x == pytest.approx(1.0, abs=1e-6)
        assert moments.var_p == pytest.approx(1.0, abs=1e-6)

    def test_displaced_unit_noise(self):
        moments = quadrature_moments(mixture_density_matrix(make_mixture(1 + 1j, 1.0)))
        root2 = math.sqrt(2)
        assert moments.mean_x == pytest.approx(root2, abs=1e-6)
        assert moments.mean_p == pytest.approx(root2, abs=1e-6)
        assert moments.var_x == pytest.approx(1.5, abs=1e-6)
        assert moments.var_p == pytest.approx(1.5, abs=1e-6)

    def test_anisotropic_noise(self):
        rho = mixture_density_matrix(make_mixture(0, 0.5, 0.25))
        moments = quadrature_moments(rho)
        assert moments.var_x == pytest.approx(1.0, abs=1e-6)
        assert moments.var_p == pytest.approx(0.75, abs=1e-6)


class TestCascadeDensityCheck:
    def test_half_plus_quarter(self):
        diff = cascade_density_check(
            CoherentState(0), NoiseCovariance(0.5, 0.5), NoiseCovariance(0.25, 0.25),
            grid=FAST_GRID,
        )
        assert diff < 1e-6

    def test_identity_second_stage_is_exact(self):
        diff = cascade_density_check(
            CoherentState(0), NoiseCovariance(0.5, 0.5), NoiseCovariance(0, 0),
            grid=FAST_GRID,
        )
        assert diff == 0.0

    def test_half_plus_half_reaches_measurement_noise(self):
        diff = cascade_density_check(
            CoherentState(0), NoiseCovariance(0.5, 0.5), NoiseCovariance(0.5, 0.5),
            grid=FAST_GRID,
        )
        assert diff < 1e-6


class TestSqueezing:
    def test_zero_squeezing_is_identity(self):
        assert np.array_equal(squeeze_fock_matrix(0.0, 16), np.eye(17))

    def test_squeezed_vacuum_variances(self):
        s = squeeze_fock_matrix(0.5, 40)
        rho = DensityMatrix(40, np.outer(s[:, 0], s[:, 0].conj()))
        moments = quadrature_moments(rho)
        assert moments.var_x == pytest.approx(math.e / 2, abs=1e-4)
        assert moments.var_p == pytest.approx(math.exp(-1) / 2, abs=1e-4)

    def test_unitary_on_lower_block(self):
        s = squeeze_fock_matrix(0.5, 40)
        block = 2 * 41 // 3
        defect = np.max(np.abs((s.conj().T @ s - np.eye(41))[:block, :block]))
        assert defect < 1e-8

    def test_rejects_r_beyond_declared_range(self):
        with pytest.raises(TruncationError):
            squeeze_fock_matrix(1.6, 128)

    def test_rejects_cutoff_too_small_for_r(self):
        with pytest.raises(TruncationError):
            squeeze_fock_matrix(1.5, 32)

    def test_squeezed_vector_matches_matrix_route(self):
        vec = squeezed_fock_vector(0, 0.5, 40)
        s = squeeze_fock_matrix(0.5, 40)
        assert np.allclose(vec.amplitudes, s[:, 0], atol=1e-12)

    def test_matched_squeezed_cloner_fidelity(self):
        spec = squeezed_variant(1, 2, 0.5)
        center = SqueezedState(0, 0.5)
        cutoff = default_cutoff(center, spec.noise)
        rho = mixture_density_matrix(GaussianMixtureState(center, spec.noise), cutoff=cutoff)
        fid = fidelity_against(squeezed_fock_vector(0, 0.5, cutoff), rho)
        assert abs(fid - 2 / 3) < 1e-4

    def test_displaced_squeezed_center_fidelity_is_translation_invariant(self):
        spec = squeezed_variant(1, 2, 0.5)
        center = SqueezedState(1 - 1j, 0.5)
        cutoff = default_cutoff(center, spec.noise)
        rho = mixture_density_matrix(GaussianMixtureState(center, spec.noise), cutoff=cutoff)
        fid = fidelity_against(squeezed_fock_vector(1 - 1j, 0.5, cutoff), rho)
        assert abs(fid - 2 / 3) < 1e-4


class TestDensityMatrixType:
    def test_rejects_non_hermitian(self):
        bad = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(DomainError):
            DensityMatrix(1, bad)

    def test_validate_flags_negativity(self):
        rho = DensityMatrix(1, np.diag([1.5, -0.5]).astype(complex))
        with pytest.raises(DomainError):
            rho.validate()

    def test_validate_flags_trace_deficit(self):
        rho = DensityMatrix(1, np.diag([0.9, 0.0]).astype(complex))
        with pytest.raises(TruncationError):
            rho.validate()

    def test_shape_checked(self):
        with pytest.raises(DimensionError):
            DensityMatrix(3, np.eye(3, dtype=complex))


class TestConvergence:
    def test_doubling_changes_nothing_measurable(self):
        mix = make_mixture(1, 0.5)
        base_cut = default_cutoff(mix.center, mix.noise)
        vec = coherent_fock_vector(1, base_cut)
        f_base = fidelity_against(vec, mixture_density_matrix(mix, base_cut, QuadratureGrid(41)))
        vec2 = coherent_fock_vector(1, 2 * base_cut)
        f_fine = fidelity_against(vec2, mixture_density_matrix(mix, 2 * base_cut, QuadratureGrid(82)))
        assert abs(f_base - f_fine) < 1e-7
