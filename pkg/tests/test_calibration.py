import math

import numpy as np
import pytest

from jjal import exceptions
from jjal.calibration.Dispersive import ResonatorParams, dispersive_shift, perturbative_chi
from jjal.calibration.QuantumJumps import (JumpFilterConfig, assign_qubit_states, discrimination_fidelity,
                                           fit_state_populations, separation_for_fidelity, threshold_fidelity)
from jjal.calibration.Ramsey import ramsey_double, ramsey_fit, ramsey_single
from jjal.calibration.Readout import (measurement_efficiency, measurement_photon_number, pointer_angle,
                                      power_to_photon_flux, quantum_efficiency_bound, stark_photon_calibration)
from jjal.calibration.Temperature import qubit_temperature, temperature_from_populations
from jjal.calibration.Transmon import (TransmonParams, transmon_levels_asymptotic,
                                       transmon_levels_charge_basis)
from jjal.circuit.PhysicalConstants import PhysicalConstants
from jjal.io import synth


PLANCK = PhysicalConstants.planck
TWO_PI = 2 * math.pi


@pytest.fixture
def qubit():
    return TransmonParams.from_frequencies(12.5e9, 225e6, charge_cutoff=15)


class TestTransmon:

    def test_transition_frequency(self, qubit):
        levels = transmon_levels_charge_basis(qubit, 3) / PLANCK
        assert levels[1] - levels[0] == pytest.approx(4.518e9, rel=0.02)
        assert (levels[2] - levels[1]) - (levels[1] - levels[0]) == pytest.approx(-225e6, rel=0.1)

    def test_asymptotic_agrees(self, qubit):
        exact = transmon_levels_charge_basis(qubit, 2) / PLANCK
        asymptotic = [transmon_levels_asymptotic(qubit, k) / PLANCK for k in range(2)]
        assert asymptotic[1] - asymptotic[0] == pytest.approx(exact[1] - exact[0], rel=5e-3)

    @pytest.mark.parametrize('ratio', [51.0, 60.0, 70.0, 80.0, 90.0, 100.0])
    def test_transmon_regime_grid(self, ratio):
        charging = 225e6
        params = TransmonParams.from_frequencies(ratio * charging, charging, charge_cutoff=15)
        exact = transmon_levels_charge_basis(params, 3) / PLANCK
        asymptotic = [transmon_levels_asymptotic(params, k) / PLANCK for k in range(2)]

        f_ge = exact[1] - exact[0]
        assert asymptotic[1] - asymptotic[0] == pytest.approx(f_ge, rel=0.02)
        assert abs((exact[2] - exact[1]) - f_ge) > charging

    def test_asymptotic_warns_outside_transmon_regime(self):
        params = TransmonParams.from_frequencies(4.5e9, 225e6)
        with pytest.warns(exceptions.TransmonRegimeWarning):
            transmon_levels_asymptotic(params, 1)

    def test_charge_dispersion(self):
        symmetric = TransmonParams.from_frequencies(2e9, 1e9)
        offset = TransmonParams.from_frequencies(2e9, 1e9, gate_charge=0.5)

        def f01(params):
            levels = transmon_levels_charge_basis(params, 2)
            return (levels[1] - levels[0]) / PLANCK

        assert abs(f01(symmetric) - f01(offset)) > 1e8

    def test_too_many_levels(self):
        params = TransmonParams.from_frequencies(12.5e9, 225e6, charge_cutoff=10)
        with pytest.raises(exceptions.CutoffTooSmall) as error:
            transmon_levels_charge_basis(params, 19)
        assert error.value.cutoff == 10

    def test_invalid_parameters(self):
        with pytest.raises(exceptions.InvalidParameter):
            TransmonParams.from_frequencies(12.5e9, 0.0)
        with pytest.raises(exceptions.InvalidParameter):
            TransmonParams.from_frequencies(12.5e9, 225e6, charge_cutoff=5)


class TestDispersive:

    def test_measured_device(self, qubit):
        resonator = ResonatorParams(5.8224e9, TWO_PI * 2.7e6, coupling=TWO_PI * 39e6)
        dressed = dispersive_shift(qubit, resonator)
        chi_hz = dressed.chi / TWO_PI

        assert chi_hz == pytest.approx(480e3, rel=0.4)
        assert dressed.qubit_anharmonicity / TWO_PI == pytest.approx(225e6, rel=0.15)
        assert dressed.resonator_frequency > 5.8224e9

        estimate = perturbative_chi(39e6, dressed.qubit_frequency - dressed.resonator_frequency,
                                    -dressed.qubit_anharmonicity / TWO_PI)
        assert abs(estimate) < chi_hz < 3 * abs(estimate)

    def test_uncoupled(self, qubit):
        dressed = dispersive_shift(qubit, ResonatorParams(5.8224e9, TWO_PI * 2.7e6))
        assert abs(dressed.chi / TWO_PI) < 1.0
        assert dressed.resonator_frequency == pytest.approx(5.8224e9, rel=1e-12)

    def test_strong_coupling_warns(self, qubit):
        with pytest.warns(exceptions.NonDispersiveWarning):
            dispersive_shift(qubit, ResonatorParams(5.8224e9, TWO_PI * 2.7e6, coupling=TWO_PI * 300e6))

    def test_invalid_resonator(self):
        with pytest.raises(exceptions.InvalidParameter):
            ResonatorParams(5.8e9, 0.0)


class TestReadout:

    def test_measurement_photon_number(self):
        photons = measurement_photon_number(150, TWO_PI * 2.7e6, 0.0, 500e-9)
        assert photons == pytest.approx(318.1, abs=0.5)

    def test_internal_loss(self):
        kappa = TWO_PI * 2.7e6
        assert measurement_photon_number(1, kappa, kappa, 1e-6) == pytest.approx(kappa * 1e-6)

    def test_zero_kappa(self):
        with pytest.raises(exceptions.ZeroKappa):
            measurement_photon_number(150, 0.0, 0.0, 500e-9)

    def test_photon_flux(self):
        assert power_to_photon_flux(-118, 5.8224e9) == pytest.approx(420, rel=0.05)

    def test_efficiency(self):
        efficiency = measurement_efficiency(2.0)
        assert efficiency == pytest.approx(0.125)
        assert quantum_efficiency_bound(efficiency) == pytest.approx(0.25)
        with pytest.raises(exceptions.InvalidParameter):
            quantum_efficiency_bound(efficiency, 0.0)

    def test_pointer_angle(self):
        angle = math.degrees(pointer_angle(TWO_PI * 480e3, TWO_PI * 2.7e6))
        assert angle == pytest.approx(40.3, abs=0.5)

    def test_stark_single_photon(self):
        amplitude_squared = np.array([1.0, 2.0, 3.0])
        calibration = stark_photon_calibration(amplitude_squared, 1e6 + 480e3 * amplitude_squared, 1e6,
                                               TWO_PI * 480e3)

        np.testing.assert_allclose(calibration.photon_numbers, [1.0, 2.0, 3.0])
        assert calibration.slope == pytest.approx(1.0)
        assert calibration.r_squared == pytest.approx(1.0)

    def test_stark_nonlinear(self):
        shifts = 480e3 * np.array([1.0, 1.0, 10.0])
        with pytest.warns(exceptions.NonlinearityWarning):
            stark_photon_calibration([1.0, 2.0, 3.0], 1e6 + shifts, 1e6, TWO_PI * 480e3)

    def test_stark_too_few_points(self):
        with pytest.raises(exceptions.InsufficientData):
            stark_photon_calibration([1.0, 2.0], [1.1e6, 1.2e6], 1e6, TWO_PI * 480e3)


class TestRamsey:

    def test_single(self):
        delay = np.linspace(0, 20e-6, 401)
        fit = ramsey_fit(delay, ramsey_single(delay, 0.5, 6.5e-6, 1e6, 0.0, 0.5))

        assert fit['t2'] == pytest.approx(6.5e-6, rel=1e-4)
        assert fit['frequency'] == pytest.approx(1e6, rel=1e-6)
        assert fit['offset'] == pytest.approx(0.5, abs=1e-6)

    def test_double(self):
        tables = synth.ramsey(np.random.default_rng(0), mode='double')
        fit = ramsey_fit(tables['ramsey']['delay_s'], tables['ramsey']['signal'], mode='double')

        assert fit['frequency_1'] == pytest.approx(1e6, rel=1e-4)
        assert fit['frequency_2'] == pytest.approx(1.19e6, rel=1e-4)
        assert fit['t2'] == pytest.approx(6.5e-6, rel=1e-3)

    def test_noisy_single(self, rng):
        delay = np.linspace(0, 20e-6, 401)
        signal = ramsey_single(delay, 0.5, 6.5e-6, 1e6, 0.0, 0.5) + rng.normal(0, 0.02, delay.size)
        fit = ramsey_fit(delay, signal)

        assert fit['t2'] == pytest.approx(6.5e-6, abs=5 * fit.standard_errors['t2'])
        assert fit['frequency'] == pytest.approx(1e6, rel=1e-2)

    def test_double_model_reduces_to_single(self):
        delay = np.linspace(0, 5e-6, 11)
        np.testing.assert_allclose(ramsey_double(delay, 0.5, 0.0, 6.5e-6, 1e6, 2e6, 0.0, 0.0, 0.5),
                                   ramsey_single(delay, 0.5, 6.5e-6, 1e6, 0.0, 0.5))

    def test_unknown_mode(self):
        with pytest.raises(exceptions.InvalidParameter):
            ramsey_fit(np.linspace(0, 1e-6, 10), np.zeros(10), mode='triple')


class TestQuantumJumps:

    BANDS = JumpFilterConfig({'g': 0.0, 'e': 8.0}, 1.0)

    def test_latching(self):
        assignment = assign_qubit_states([5.0, 0.2, 3.0, 7.5, 9.5, 4.0, 0.9], self.BANDS)

        assert assignment.labels.tolist() == ['g', 'g', 'g', 'e', 'e', 'e', 'g']
        assert assignment.jumps == 2
        assert assignment.dwell_times == {'g': [3, 1], 'e': [3]}
        assert assignment.mean_dwell('g') == pytest.approx(2.0)

    def test_label_permutation(self):
        swapped = JumpFilterConfig({'e': 0.0, 'g': 8.0}, 1.0)
        first = assign_qubit_states([0.1, 8.2, 4.0, 0.3], self.BANDS)
        second = assign_qubit_states([0.1, 8.2, 4.0, 0.3], swapped)

        relabel = {'g': 'e', 'e': 'g'}
        assert [relabel[label] for label in first.labels.tolist()] == second.labels.tolist()

    def test_no_sample_in_band(self):
        with pytest.raises(exceptions.NoInBandSample):
            assign_qubit_states([4.0, 4.1, 3.9], self.BANDS)

    def test_overlapping_bands(self):
        with pytest.raises(exceptions.InvalidParameter):
            JumpFilterConfig({'g': 0.0, 'e': 1.5}, 1.0)

    def test_well_separated_record(self):
        tables = synth.telegraph(np.random.default_rng(7), separation=8.0)
        # Three sigma bands catch nearly every sample right after a jump.
        bands = JumpFilterConfig({'g': 0.0, 'e': 8.0}, 3.0)
        assignment = assign_qubit_states(tables['telegraph']['q'], bands)
        truth = tables['telegraph_truth']['state']

        errors = np.mean((assignment.labels == 'e') != (truth == 1))
        assert errors < 1e-3

    def test_fidelity_generator(self):
        tables = synth.telegraph(np.random.default_rng(7), fidelity=0.9)
        separation = separation_for_fidelity(0.9, 1.0)
        fidelity = discrimination_fidelity(tables['telegraph']['q'], tables['telegraph_truth']['state'],
                                           0.0, separation)

        assert threshold_fidelity(separation, 1.0) == pytest.approx(0.9)
        assert 0.85 <= fidelity <= 0.95

    def test_populations(self, rng):
        q = np.concatenate([rng.normal(0.0, 1.0, 6000), rng.normal(8.0, 1.0, 14000)])
        fitted = fit_state_populations(q, [0.0, 8.0], 1.0)

        np.testing.assert_allclose(fitted.populations, [0.3, 0.7], atol=0.02)
        np.testing.assert_allclose(fitted.means, [0.0, 8.0], atol=0.1)
        assert fitted.sigma == pytest.approx(1.0, rel=0.1)


class TestTemperature:

    def test_two_level(self):
        fit = qubit_temperature([12.0, 1.0], [0.0, PLANCK * 4.505e9])
        assert fit.temperature == pytest.approx(0.087, abs=1e-3)

    def test_three_level_fit(self):
        energies = np.array([0.0, 4.5e9, 8.8e9]) * PLANCK
        temperature = 0.06
        populations = np.exp(-energies / (PhysicalConstants.boltzmann * temperature))

        assert qubit_temperature(populations, energies).temperature == pytest.approx(temperature, rel=1e-9)

    def test_fit_is_anchored_on_ground_level(self):
        quantum = PLANCK * 4.5e9
        energies = np.array([0.0, 1.0, 2.0]) * quantum
        temperature = 0.06
        populations = np.exp(-energies / (PhysicalConstants.boltzmann * temperature))
        populations[2] *= 1.2

        # Least squares through the origin over (-u, -u / T) and (-2u, -2u / T + ln 1.2).
        u = quantum / PhysicalConstants.boltzmann
        expected = 1.0 / (1.0 / temperature - 2 * math.log(1.2) / (5 * u))
        assert qubit_temperature(populations, energies).temperature == pytest.approx(expected, rel=1e-9)

    def test_fit_of_two_levels_matches_closed_form(self):
        energies = [0.0, PLANCK * 4.505e9]
        fit = qubit_temperature([12.0, 1.0], energies, method='fit')
        assert fit.temperature == pytest.approx(qubit_temperature([12.0, 1.0], energies).temperature, rel=1e-12)

    def test_empty_excited_state(self):
        assert qubit_temperature([1.0, 0.0], [0.0, PLANCK * 4.5e9]).temperature == 0.0

    def test_inverted(self):
        with pytest.raises(exceptions.InvertedPopulation):
            qubit_temperature([1.0, 2.0], [0.0, PLANCK * 4.5e9])

    def test_mismatched(self):
        with pytest.raises(exceptions.InsufficientData):
            qubit_temperature([1.0], [0.0])

    def test_from_transmon(self, qubit):
        fit = temperature_from_populations([12.0, 1.0], qubit)
        transition = (fit.level_energies[1] - fit.level_energies[0]) / PLANCK
        assert transition == pytest.approx(4.518e9, rel=1e-3)
        assert fit.temperature == pytest.approx(0.087, rel=0.01)
