import numpy as np
import pytest

from jjal import exceptions
from jjal.circuit.ArrayDesign import ArrayDesign, plasma_frequency
from jjal.circuit.Ladder import build_cascade_matrices, build_ladder_matrices
from jjal.modes.ModeSpectrum import solve_modes
from jjal.scattering.ABCD import AbcdMatrix, abcd_reflection, array_cascade, s11_sweep
from jjal.scattering.ComplexTrace import ComplexTrace
from jjal.scattering.Resonances import dimer_couplings, extract_resonances, find_resonances
from tests.conftest import REFERENCE_MODES


def one_port(frequencies, center, kappa):
    detuning = frequencies - center
    return (kappa / 2 - 1j * detuning) / (kappa / 2 + 1j * detuning)


class TestComplexTrace:

    def test_shape_mismatch(self):
        with pytest.raises(exceptions.GridMismatch):
            ComplexTrace(np.arange(3.0), np.ones(4))

    def test_empty(self):
        with pytest.raises(exceptions.EmptyGrid):
            ComplexTrace(np.array([]), np.array([]))

    def test_not_increasing(self):
        with pytest.raises(exceptions.InvalidGrid):
            ComplexTrace(np.array([1.0, 3.0, 2.0]), np.ones(3))

    def test_from_physics_conjugates(self):
        trace = ComplexTrace.from_physics([1.0, 2.0], [1 + 1j, 2 - 3j])
        np.testing.assert_array_equal(trace.values, [1 - 1j, 2 + 3j])
        assert trace.metadata['convention'] == 'engineering'
        assert trace.metadata['conjugated_from'] == 'physics'

    def test_group_delay_peaks_at_resonance(self):
        frequencies = np.linspace(4.9e9, 5.1e9, 2001)
        trace = ComplexTrace(frequencies, one_port(frequencies, 5e9, 10e6))
        delay = trace.group_delay()

        assert frequencies[np.argmax(delay)] == pytest.approx(5e9, abs=2e5)
        assert delay.max() == pytest.approx(4 / (2 * np.pi * 10e6), rel=0.01)


class TestAbcd:

    def test_elements_are_reciprocal(self, design8):
        cascade = array_cascade(design8, 0.0, np.linspace(1e9, 10e9, 50))
        np.testing.assert_allclose(cascade.determinant(), 1.0, rtol=1e-8)

    def test_identity_is_matched(self):
        np.testing.assert_allclose(abcd_reflection(AbcdMatrix.identity(5), 50.0), 0.0)

    def test_series_resistor(self):
        reflection = abcd_reflection(AbcdMatrix.series(np.array([50.0])), 50.0)
        assert reflection[0] == pytest.approx(1 / 3)

    def test_sweep_is_lossless(self, design8):
        trace = s11_sweep(design8, 0.2, np.linspace(1e9, 20e9, 400))
        np.testing.assert_allclose(np.abs(trace.values), 1.0, rtol=1e-9)
        assert trace.metadata['termination'] == 'grounded'
        assert trace.metadata['flux_phi0'] == 0.2

    def test_grid_errors(self, design8):
        with pytest.raises(exceptions.EmptyGrid):
            s11_sweep(design8, 0.0, [])
        with pytest.raises(exceptions.InvalidGrid):
            s11_sweep(design8, 0.0, [2e9, 1e9])
        with pytest.raises(exceptions.InvalidGrid):
            s11_sweep(design8, 0.0, [0.0, 1e9])
        with pytest.raises(exceptions.InvalidGrid):
            s11_sweep(design8, 0.0, [1e9, 1.3 * plasma_frequency(design8)])

    def test_frustrated_flux(self, design8):
        with pytest.raises(exceptions.FrustrationSingularity):
            s11_sweep(design8, 0.5, [1e9, 2e9])

class TestExtractResonances:

    def test_single_resonance(self):
        frequencies = np.linspace(4.9e9, 5.1e9, 2001)
        found = extract_resonances(ComplexTrace(frequencies, one_port(frequencies, 5.01e9, 10e6)))

        assert len(found) == 1
        assert found[0].center_frequency == pytest.approx(5.01e9, abs=1e4)
        assert found[0].external_coupling == pytest.approx(10e6, rel=0.01)
        assert found[0].quality == 'ok'

    def test_edge_resonance(self):
        frequencies = np.linspace(4.9e9, 5.1e9, 2001)
        found = extract_resonances(ComplexTrace(frequencies, one_port(frequencies, 4.905e9, 10e6)))

        assert found[0].quality == 'edge'
        assert found[0].center_frequency == pytest.approx(4.905e9, abs=1e5)

    def test_flat_trace(self):
        frequencies = np.linspace(4.9e9, 5.1e9, 201)
        with pytest.raises(exceptions.NoResonanceFound):
            extract_resonances(ComplexTrace(frequencies, -np.ones(201)))

    def test_dimer_couplings(self):
        frequencies = np.arange(4.99e9, 5.41e9, 2e4)
        values = one_port(frequencies, 5.0e9, 2e6) * one_port(frequencies, 5.4e9, 2.2e6)
        dimers = dimer_couplings(ComplexTrace(frequencies, values))

        assert len(dimers) == 1
        dimer = dimers[0]
        assert dimer.f_minus == pytest.approx(5.0e9, abs=2e4)
        assert dimer.f_plus == pytest.approx(5.4e9, abs=2e4)
        assert dimer.kappa_minus == pytest.approx(2e6, rel=0.02)
        assert dimer.kappa_plus == pytest.approx(2.2e6, rel=0.02)
        assert dimer.f_1 + dimer.f_2 == pytest.approx(dimer.f_minus + dimer.f_plus, rel=1e-12)
        assert dimer.f_1 > dimer.f_2
        assert dimer.coupling == pytest.approx(199.77e6, rel=2e-3)


class TestFindResonances:

    @pytest.mark.parametrize('stray', [0.0, 10e-12])
    def test_centers_are_cascade_eigenmodes(self, design8, stray):
        design = design8.replace(stray_inductance=stray)
        frequencies = solve_modes(design, matrices=build_cascade_matrices(design)).frequencies_hz
        limit = (frequencies[3] + frequencies[4]) / 2
        step = min(10e6, np.diff(frequencies[:4]).min() / 4)

        found = find_resonances(design, 0.0, 1e9, limit, coarse_step=step)

        np.testing.assert_allclose([estimate.center_frequency for estimate in found], frequencies[:4], rtol=1e-6)
        assert all(estimate.external_coupling > 0 for estimate in found)

    def test_stray_adds_one_node_per_cell(self, design8):
        assert build_cascade_matrices(design8).capacitance.shape == (8, 8)
        assert build_cascade_matrices(design8.replace(stray_inductance=10e-12)).capacitance.shape == (16, 16)

    def test_stray_lowers_resonances(self, design8):
        bare = find_resonances(design8, 0.0, 1e9, 60e9, coarse_step=10e6)
        loaded = find_resonances(design8.replace(stray_inductance=10e-12), 0.0, 1e9, 60e9, coarse_step=10e6)
        assert loaded[0].center_frequency < bare[0].center_frequency

    def test_nothing_in_range(self, design8):
        with pytest.raises(exceptions.NoResonanceFound):
            find_resonances(design8, 0.0, 1e9, 5e9, coarse_step=10e6)

    @pytest.mark.slow
    @pytest.mark.parametrize('name', sorted(REFERENCE_MODES))
    def test_reference_devices(self, name):
        design = ArrayDesign.from_sample(name)
        assert design.stray_inductance > 0
        spectrum = solve_modes(design, matrices=build_cascade_matrices(design))
        expected = spectrum.frequencies_hz[spectrum.frequencies_hz < 10e9]

        found = find_resonances(design, 0.0, 0.1e9, 10.5e9)
        centers = np.array([estimate.center_frequency for estimate in found])

        for frequency in expected:
            nearest = found[int(np.argmin(np.abs(centers - frequency)))]
            assert abs(nearest.center_frequency - frequency) <= max(nearest.external_coupling, 5e-3 * frequency)
        assert np.count_nonzero(centers < 10e9) == expected.size

    @pytest.mark.slow
    def test_cascade_model_without_stray_is_the_ladder(self):
        design = ArrayDesign.from_sample('sample_i').replace(stray_inductance=0.0)
        cascade = solve_modes(design, matrices=build_cascade_matrices(design))
        ladder = solve_modes(design, matrices=build_ladder_matrices(design))

        np.testing.assert_allclose(cascade.frequencies_hz[:8], ladder.frequencies_hz[:8], rtol=1e-3)
