import math

import numpy as np
import pytest
import scipy.linalg

from jjal import exceptions
from jjal.circuit.ArrayDesign import plasma_frequency
from jjal.circuit.Ladder import build_ladder_matrices
from jjal.modes.ModeSpectrum import inverse_sqrt_spd, mirror_overlap, pair_dimers, solve_modes, sweep_flux
from tests.conftest import REFERENCE_MODES, small_design


class TestInverseSqrt:

    def test_identity(self):
        np.testing.assert_allclose(inverse_sqrt_spd(np.eye(3)), np.eye(3), atol=1e-15)

    def test_diagonal(self):
        np.testing.assert_allclose(inverse_sqrt_spd(np.diag([4.0, 9.0])), np.diag([0.5, 1 / 3]), atol=1e-15)

    def test_random(self, rng):
        rotation, _ = np.linalg.qr(rng.standard_normal((20, 20)))
        matrix = rotation.T @ np.diag(rng.uniform(0.5, 5.0, 20)) @ rotation
        root = inverse_sqrt_spd(matrix)

        assert np.linalg.norm(root @ matrix @ root - np.eye(20)) < 1e-9
        np.testing.assert_array_equal(root, root.T)

    def test_not_positive_definite(self):
        with pytest.raises(exceptions.NotPositiveDefinite) as error:
            inverse_sqrt_spd(np.diag([1.0, -2.0]))
        assert error.value.smallest_eigenvalue == pytest.approx(-2.0)
        assert error.value.category == 'numerics'


class TestSolveModes:

    def test_spectrum_invariants(self, design8):
        spectrum = solve_modes(design8)

        np.testing.assert_allclose(spectrum.eigenvectors.T @ spectrum.eigenvectors, np.eye(8), atol=1e-10)
        assert np.all(np.diff(spectrum.frequencies) >= 0)
        assert spectrum.frequencies[0] > 0
        assert spectrum.frequencies_hz[-1] <= 1.0001 * plasma_frequency(design8)

    @pytest.mark.parametrize('n_squids', [4, 8, 64])
    def test_generalized_eigenproblem(self, n_squids):
        design = small_design(n_squids)
        matrices = build_ladder_matrices(design)
        expected = np.sqrt(scipy.linalg.eigh(matrices.inverse_inductance, matrices.capacitance, eigvals_only=True))

        np.testing.assert_allclose(solve_modes(design).frequencies, expected, rtol=1e-10)

    @pytest.mark.parametrize('n_squids', [10, 100, 500])
    def test_uniform_chain(self, n_squids):
        design = small_design(n_squids)
        matrices = build_ladder_matrices(design, uniform=True)
        spectrum = solve_modes(design, matrices=matrices)

        k = np.arange(1, n_squids + 1) * math.pi / (n_squids + 1)
        stiffness = 2 * (1 - np.cos(k))
        expected = np.sqrt(stiffness / design.josephson_inductance /
                           (design.island_capacitance + design.josephson_capacitance * stiffness))

        np.testing.assert_allclose(spectrum.frequencies, np.sort(expected), rtol=1e-9)

    def test_node_flux_consistency(self, design8):
        spectrum = solve_modes(design8)
        capacitance = build_ladder_matrices(design8).capacitance
        root = scipy.linalg.sqrtm(capacitance).real

        np.testing.assert_allclose(root @ spectrum.node_flux_vectors, spectrum.eigenvectors, atol=1e-9)

    def test_sign_convention(self, design8):
        vectors = solve_modes(design8).eigenvectors
        pivots = np.argmax(np.abs(vectors), axis=0)
        assert np.all(vectors[pivots, np.arange(8)] > 0)

    def test_dimers_mix_mirror_classes(self, design8):
        spectrum = solve_modes(design8)
        overlaps = mirror_overlap(spectrum.eigenvectors)

        assert np.all(np.abs(overlaps) > 0.99)
        for lower in range(0, 8, 2):
            assert spectrum.mirror_parity[lower] * spectrum.mirror_parity[lower + 1] == -1

    def test_flux_lowers_frequencies(self, design8):
        grid = np.linspace(0.0, 0.45, 10)
        frequencies = np.array([solve_modes(design8, flux).frequencies for flux in grid])
        assert np.all(np.diff(frequencies, axis=0) <= 0)

    @pytest.mark.slow
    @pytest.mark.parametrize('name', sorted(REFERENCE_MODES))
    def test_reference_devices(self, sample_spectra, name):
        _, spectrum = sample_spectra(name)
        expected = np.array(REFERENCE_MODES[name][0]) * 1e9
        np.testing.assert_allclose(spectrum.frequencies_hz[:len(expected)], expected, rtol=0.02)


class TestPairDimers:

    def test_two_modes(self, design8):
        spectrum = solve_modes(design8)
        cutoff = (spectrum.frequencies_hz[1] + spectrum.frequencies_hz[2]) / 2
        dimers = pair_dimers(spectrum, cutoff)

        assert len(dimers) == 1
        assert dimers[0].mode_indices == (0, 1)
        assert dimers[0].half_splitting > 0
        assert dimers[0].splitting_hz == pytest.approx(spectrum.frequencies_hz[1] - spectrum.frequencies_hz[0])

    def test_odd_count(self, design8):
        spectrum = solve_modes(design8)
        cutoff = (spectrum.frequencies_hz[2] + spectrum.frequencies_hz[3]) / 2
        with pytest.raises(exceptions.OddModeCount) as error:
            pair_dimers(spectrum, cutoff)
        assert error.value.mode_count == 3

    @pytest.mark.slow
    def test_sample_i(self, sample_spectra):
        _, spectrum = sample_spectra('sample_i')
        dimers = pair_dimers(spectrum, 8e9)

        assert len(dimers) == 2
        assert dimers[0].lower_frequency / (2 * math.pi) == pytest.approx(2.061e9, rel=0.02)
        assert dimers[1].upper_frequency / (2 * math.pi) == pytest.approx(7.106e9, rel=0.02)
        assert dimers[0].splitting_hz == pytest.approx(417e6, rel=0.15)
        assert dimers[1].splitting_hz == pytest.approx(679e6, rel=0.15)

    @pytest.mark.slow
    def test_sample_iii(self, sample_spectra):
        _, spectrum = sample_spectra('sample_iii')
        assert len(pair_dimers(spectrum, 9e9)) == 6


class TestSweepFlux:

    def test_matches_single_solves(self, design8):
        fluxes = [0.0, 0.1, 0.2, 0.3]
        spectra = sweep_flux(design8, fluxes, workers=2)

        assert [spectrum.flux.flux for spectrum in spectra] == fluxes
        for flux, spectrum in zip(fluxes, spectra):
            np.testing.assert_array_equal(spectrum.frequencies, solve_modes(design8, flux).frequencies)

    def test_environment_cap(self, design8, monkeypatch):
        monkeypatch.setenv('JJAL_THREADS', '0')
        with pytest.raises(exceptions.ConfigError):
            sweep_flux(design8, [0.0])
