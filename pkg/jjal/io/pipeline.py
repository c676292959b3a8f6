import dataclasses
import logging
import math
import os

import numpy as np

from jjal import exceptions
from jjal import utils
from jjal.calibration.Dispersive import ResonatorParams, dispersive_shift, perturbative_chi
from jjal.calibration.QuantumJumps import JumpFilterConfig, assign_qubit_states
from jjal.calibration.Ramsey import ramsey_double, ramsey_fit, ramsey_single
from jjal.calibration.Readout import (measurement_efficiency, measurement_photon_number, pointer_angle,
                                      power_to_photon_flux, quantum_efficiency_bound, stark_photon_calibration)
from jjal.calibration.Temperature import qubit_temperature, temperature_from_populations
from jjal.calibration.Transmon import TransmonParams, transmon_levels_asymptotic, transmon_levels_charge_basis
from jjal.circuit.ArrayDesign import SAMPLES_DIRECTORY, ArrayDesign, plasma_frequency
from jjal.circuit.PhysicalConstants import PhysicalConstants
from jjal.fitting.DimerFit import dimer_asymmetry, dimer_reflection, fit_dimer_reflection
from jjal.fitting.FluxFit import flux_modulation_model, fit_flux_modulation
from jjal.fitting.GainFit import fit_gain_profile, gain_trace
from jjal.fitting.NoiseVisibility import noise_visibility
from jjal.io import synth
from jjal.io.ResultDocument import ResultDocument, build_provenance
from jjal.io.config import load_design
from jjal.io.tables import load_inputs, load_populations, write_table
from jjal.kerr.KerrTensor import kerr_coefficients
from jjal.modes.ModeSpectrum import pair_dimers, solve_modes, sweep_flux
from jjal.scattering.ABCD import s11_sweep
from jjal.scattering.Resonances import find_resonances


logger = logging.getLogger(__name__)

CSV = 'csv'
JSON = 'json'


@dataclasses.dataclass
class PipelineConfig:

    """
        **One batch run of the command line tool**

        :param command: Verb, with the calibration or generator name for ``calibrate`` and ``synth``
        :type command: str
        :param options: Verb-specific options, in the units of the command line flags
        :type options: dict
        :param output_directory: Directory the tables and the result document are written to
        :type output_directory: str
        :param design: Design file path or bundled sample name
        :type design: str
        :param inputs: Input CSV files
        :type inputs: list
        :param seed: Seed of the synthetic generators
        :type seed: int
        :param output_format: ``csv`` writes tables as CSV files, ``json`` embeds them in the result document
        :type output_format: str
    """

    command: str
    options: dict = dataclasses.field(default_factory=dict)
    output_directory: str = '.'
    design: str = None
    inputs: list = dataclasses.field(default_factory=list)
    seed: int = 0
    output_format: str = CSV

    @property
    def stem(self):
        return self.command.replace(' ', '_').replace('-', '_')


class _Emitter:

    # Every table goes through one emitter on the calling thread.
    def __init__(self, config):
        self.config = config
        self.tables = {}

    def table(self, name, columns, output_format=None):
        header = list(columns)
        rows = zip(*(np.asarray(column).tolist() for column in columns.values()))
        if (output_format or self.config.output_format) == JSON:
            self.tables[name] = {'header': header, 'rows': [list(row) for row in rows]}
            return

        filename = '{}_{}.csv'.format(self.config.stem, name)
        write_table(os.path.join(self.config.output_directory, filename), header, rows)
        self.tables[name] = filename


def resolve_design(design):

    """
        **Load a design from a file path or a bundled sample name**

        :param design: Path of a design file, or ``sample_i``, ``sample_ii``, ``sample_iii``
        :type design: str
        :return: The design and the file it was read from
        :rtype: tuple
    """

    if design is None:
        raise exceptions.ConfigError('This command needs --design.', 'design')
    if os.path.isfile(design):
        return load_design(design), design

    sample = os.path.join(SAMPLES_DIRECTORY, '{}.toml'.format(design))
    if os.path.isfile(sample):
        return ArrayDesign.from_sample(design), sample
    raise exceptions.ConfigError('Design {!r} is neither a file nor a bundled sample.'.format(design), 'design')


def _option(config, name, default=None, required=False):
    value = config.options.get(name)
    if value is None:
        if required:
            raise exceptions.ConfigError('Option --{} is required for {}.'.format(name.replace('_', '-'),
                                                                                config.command), name)
        return default
    return value


def _inputs(config, schema, count=1, min_rows=1):
    if len(config.inputs) != count:
        raise exceptions.ConfigError('{} takes {} input file(s), got {}.'.format(
            config.command, count, len(config.inputs)), 'inputs')
    return load_inputs(config.inputs, schema, min_rows)


def _dispersion(config, emitter, design):
    fluxes = _option(config, 'flux', [0.0])
    f_max = _option(config, 'fmax_ghz', 9.0) * utils.GHZ
    spectra = sweep_flux(design, fluxes)

    modes = {'flux_phi0': [], 'mode_index': [], 'freq_ghz': [], 'parity': []}
    dimers = {'flux_phi0': [], 'dimer_index': [], 'f_minus_ghz': [], 'f_plus_ghz': [], 'two_j_mhz': []}

    for spectrum in spectra:
        flux = spectrum.flux.flux
        for index in np.flatnonzero(spectrum.frequencies_hz < f_max):
            modes['flux_phi0'].append(flux)
            modes['mode_index'].append(int(index))
            modes['freq_ghz'].append(spectrum.frequencies_hz[index] / utils.GHZ)
            modes['parity'].append(int(spectrum.mirror_parity[index]))
        for dimer in pair_dimers(spectrum, f_max):
            dimers['flux_phi0'].append(flux)
            dimers['dimer_index'].append(dimer.dimer_index)
            dimers['f_minus_ghz'].append(dimer.lower_frequency / (2 * math.pi * utils.GHZ))
            dimers['f_plus_ghz'].append(dimer.upper_frequency / (2 * math.pi * utils.GHZ))
            dimers['two_j_mhz'].append(dimer.splitting_hz / utils.MHZ)

    emitter.table('modes', modes)
    emitter.table('dimers', dimers)
    return {
        'plasma_frequency_ghz': plasma_frequency(design) / utils.GHZ,
        'participation_ratio': [design.participation_ratio(flux) for flux in fluxes],
        'dimer_count': len(dimers['dimer_index']),
    }


def _kerr(config, emitter, design):
    retained = int(_option(config, 'retained', 8))
    spectrum = solve_modes(design, _option(config, 'flux', 0.0))
    tensor = kerr_coefficients(design, spectrum, retained)

    emitter.table('self', {
        'mode_index': np.arange(retained),
        'freq_ghz': spectrum.frequencies_hz[:retained] / utils.GHZ,
        'k_self_khz': tensor.self_kerr / utils.KHZ,
        'k_self_krad_s': tensor.self_kerr_angular / 1e3,
    })

    upper = np.triu_indices(retained)
    emitter.table('cross', {
        'mode_m': upper[0],
        'mode_k': upper[1],
        'eta': tensor.eta_factors[upper],
        'k_cross_khz': tensor.cross_kerr[upper] / utils.KHZ,
    })

    return {
        'retained_modes': retained,
        'neighbour_cross_kerr_khz': tensor.neighbour_cross_kerr() / utils.KHZ,
    }


def _s11(config, emitter, design):
    flux = _option(config, 'flux', 0.0)
    start = _option(config, 'start_ghz', 1.0) * utils.GHZ
    stop = _option(config, 'stop_ghz', 9.0) * utils.GHZ
    step = _option(config, 'step_mhz', 1.0) * utils.MHZ

    resonances = find_resonances(design, flux, start, stop, coarse_step=step)
    trace = s11_sweep(design, flux, np.arange(start, stop, step))

    emitter.table('trace', {'freq_hz': trace.frequencies, 're': trace.values.real, 'im': trace.values.imag})
    emitter.table('resonances', {
        'f0_ghz': [found.center_frequency / utils.GHZ for found in resonances],
        'kappa_mhz': [found.external_coupling / utils.MHZ for found in resonances],
        'quality': [found.quality for found in resonances],
    })

    dimers = []
    for lower, upper in zip(resonances[0::2], resonances[1::2]):
        _, f_1, f_2, coupling = dimer_asymmetry(upper.center_frequency, lower.center_frequency,
                                                upper.external_coupling, lower.external_coupling)
        dimers.append({'f_minus_ghz': lower.center_frequency / utils.GHZ,
                       'f_plus_ghz': upper.center_frequency / utils.GHZ,
                       'f_1_ghz': f_1 / utils.GHZ, 'f_2_ghz': f_2 / utils.GHZ, 'j_mhz': coupling / utils.MHZ})

    return {'resonance_count': len(resonances), 'dimers': dimers}


def _fit_fluxmap(config, emitter, design):
    table, = _inputs(config, 'fluxmap', min_rows=5)
    fit = fit_flux_modulation(table['bias_current_a'], table['freq_hz'])

    emitter.table('model', {
        'bias_current_a': table['bias_current_a'],
        'freq_hz': table['freq_hz'],
        'model_freq_hz': flux_modulation_model(table['bias_current_a'], *fit.values()),
    })

    payload = {'fit': fit.as_dict()}
    if design is not None:
        payload['design_participation_ratio'] = design.participation_ratio()
    return payload


def _fit_dimer(config, emitter, design):
    table, = _inputs(config, 'trace', min_rows=8)
    trace = table.to_trace()
    fit = fit_dimer_reflection(trace)
    model = dimer_reflection(2 * np.pi * trace.frequencies, *fit.values())

    emitter.table('model', {
        'freq_hz': trace.frequencies,
        're': trace.values.real,
        'im': trace.values.imag,
        'model_re': model.real,
        'model_im': model.imag,
    })

    hz = 2 * math.pi * utils.MHZ
    summary = {
        'f_plus_ghz': fit['omega_plus'] / (2 * math.pi * utils.GHZ),
        'f_minus_ghz': fit['omega_minus'] / (2 * math.pi * utils.GHZ),
        'kappa_plus_mhz': fit['kappa_plus'] / hz,
        'kappa_minus_mhz': fit['kappa_minus'] / hz,
        'two_j_mhz': 2 * fit['coupling'] / hz,
        'detuning_mhz': (fit['omega_1'] - fit['omega_2']) / hz,
    }
    return {'fit': fit.as_dict(), 'summary': summary}


def _fit_gain(config, emitter, design):
    table, = _inputs(config, 'gain', min_rows=4)
    result = fit_gain_profile(table['freq_hz'], table['gain_db'])

    emitter.table('model', {
        'freq_hz': table['freq_hz'],
        'gain_db': table['gain_db'],
        'model_gain_db': gain_trace(table['freq_hz'], result.lobes),
    })

    lobes = [{'gain_db': lobe.gain_db, 'center_ghz': lobe.center_frequency / utils.GHZ,
              'bandwidth_mhz': lobe.bandwidth / utils.MHZ, 'gain_bandwidth_mhz': lobe.gain_bandwidth / utils.MHZ}
             for lobe in result.lobes]
    return {'lobes': lobes, 'gain_bandwidth_mhz': result.gain_bandwidth / utils.MHZ, 'fit': result.fit.as_dict()}


def _noise_vis(config, emitter, design):
    on, off = _inputs(config, 'psd', count=2)
    spectrum = noise_visibility(on['freq_hz'], on['psd_dbm_hz'], off['freq_hz'], off['psd_dbm_hz'])

    emitter.table('visibility', {'freq_hz': spectrum.frequencies, 'visibility_db': spectrum.visibility_db})
    return {'maximum_db': spectrum.maximum_db, 'peak_ghz': spectrum.peak_frequency / utils.GHZ}


def _transmon(config):
    return TransmonParams.from_frequencies(_option(config, 'ej_ghz', required=True) * utils.GHZ,
                                           _option(config, 'ec_ghz', required=True) * utils.GHZ,
                                           gate_charge=_option(config, 'ng', 0.0))


def _calibrate_transmon(config, emitter, design):
    params = _transmon(config)
    count = int(_option(config, 'levels', 4))
    levels = transmon_levels_charge_basis(params, count) / PhysicalConstants.planck
    relative = levels - levels[0]

    emitter.table('levels', {
        'level': np.arange(count),
        'energy_ghz': relative / utils.GHZ,
        'transition_ghz': np.concatenate([[0.0], np.diff(levels)]) / utils.GHZ,
    })

    asymptotic = (transmon_levels_asymptotic(params, 1) - transmon_levels_asymptotic(params, 0))
    payload = {
        'f01_ghz': relative[1] / utils.GHZ,
        'f01_asymptotic_ghz': asymptotic / PhysicalConstants.planck / utils.GHZ,
        'ej_over_ec': params.ratio,
    }
    if count > 2:
        payload['anharmonicity_mhz'] = (relative[2] - 2 * relative[1]) / utils.MHZ
    return payload


def _calibrate_chi(config, emitter, design):
    qubit = _transmon(config)
    resonator = ResonatorParams(
        frequency=_option(config, 'fr_ghz', required=True) * utils.GHZ,
        kappa=2 * math.pi * _option(config, 'kappa_mhz', 1.0) * utils.MHZ,
        coupling=2 * math.pi * _option(config, 'g_mhz', required=True) * utils.MHZ,
    )
    dressed = dispersive_shift(qubit, resonator)

    detuning = dressed.qubit_frequency - dressed.resonator_frequency
    estimate = perturbative_chi(resonator.coupling / (2 * math.pi), detuning,
                                -dressed.qubit_anharmonicity / (2 * math.pi))
    return {
        'chi_khz': dressed.chi / (2 * math.pi * utils.KHZ),
        'chi_perturbative_khz': abs(estimate) / utils.KHZ,
        'qubit_ghz': dressed.qubit_frequency / utils.GHZ,
        'resonator_ghz': dressed.resonator_frequency / utils.GHZ,
        'qubit_anharmonicity_mhz': dressed.qubit_anharmonicity / (2 * math.pi * utils.MHZ),
        'resonator_anharmonicity_khz': dressed.resonator_anharmonicity / (2 * math.pi * utils.KHZ),
        'pointer_angle_deg': math.degrees(pointer_angle(abs(dressed.chi), resonator.kappa)),
        'fock_cutoff': dressed.fock_cutoff,
    }


def _calibrate_nmeas(config, emitter, design):
    rate = 2 * math.pi * utils.MHZ
    photons = measurement_photon_number(_option(config, 'nbar', required=True),
                                        _option(config, 'kappa_mhz', required=True) * rate,
                                        _option(config, 'gamma_mhz', 0.0) * rate,
                                        _option(config, 'tm_ns', required=True) * utils.NANOSECOND)
    payload = {'n_meas': photons}
    sigma = _option(config, 'sigma')
    if sigma is not None:
        payload.update(_efficiency(sigma, _option(config, 'chain_efficiency', 0.5)))
    return payload


def _efficiency(sigma, chain_efficiency):
    efficiency = measurement_efficiency(sigma)
    return {'efficiency': efficiency, 'quantum_efficiency_bound': quantum_efficiency_bound(efficiency,
                                                                                          chain_efficiency)}


def _calibrate_efficiency(config, emitter, design):
    return _efficiency(_option(config, 'sigma', required=True), _option(config, 'chain_efficiency', 0.5))


def _calibrate_flux(config, emitter, design):
    flux = power_to_photon_flux(_option(config, 'power_dbm', required=True),
                                _option(config, 'freq_ghz', required=True) * utils.GHZ)
    return {'photons_per_us': flux}


def _calibrate_pointer(config, emitter, design):
    angle = pointer_angle(_option(config, 'chi_khz', required=True) * utils.KHZ,
                          _option(config, 'kappa_mhz', required=True) * utils.MHZ)
    return {'pointer_angle_deg': math.degrees(angle)}


def _calibrate_stark(config, emitter, design):
    table, = _inputs(config, 'stark', min_rows=3)
    calibration = stark_photon_calibration(table['amp2'], table['f_r_hz'], _option(config, 'fr0_hz', required=True),
                                           2 * math.pi * _option(config, 'chi_khz', required=True) * utils.KHZ)

    emitter.table('photons', {
        'amp2': table['amp2'],
        'photons': calibration.photon_numbers,
        'residual_photons': calibration.residuals,
    })
    return {'photons_per_amp2': calibration.slope, 'r_squared': calibration.r_squared}


def _calibrate_ramsey(config, emitter, design):
    mode = _option(config, 'mode', 'single')
    table, = _inputs(config, 'ramsey', min_rows=6 if mode == 'single' else 9)
    fit = ramsey_fit(table['delay_s'], table['signal'], mode)
    model = ramsey_single if mode == 'single' else ramsey_double

    emitter.table('model', {
        'delay_s': table['delay_s'],
        'signal': table['signal'],
        'model_signal': model(table['delay_s'], *fit.values()),
    })
    return {'fit': fit.as_dict(), 't2_us': fit['t2'] / utils.MICROSECOND}


def _state_means(text):
    means = {}
    for item in text.split(','):
        label, _, value = item.partition('=')
        try:
            means[label.strip()] = float(value)
        except ValueError:
            raise exceptions.ConfigError('State means must read label=value, got {!r}.'.format(item), 'means')
    return means


def _calibrate_jumps(config, emitter, design):
    table, = _inputs(config, 'jumps', min_rows=2)
    filter_config = JumpFilterConfig(_state_means(_option(config, 'means', required=True)),
                                     _option(config, 'sigma', required=True))
    assignment = assign_qubit_states(table['q'], filter_config)

    emitter.table('states', {'t_s': table['t_s'], 'state': assignment.labels})

    period = float(np.median(np.diff(table['t_s']))) if len(table) > 1 else 0.0
    occupation = {label: float(np.mean(assignment.labels == label)) for label in filter_config.labels}
    dwell = {label: assignment.mean_dwell(label) * period / utils.MICROSECOND for label in filter_config.labels}
    return {'jumps': assignment.jumps, 'occupation': occupation, 'mean_dwell_us': dwell}


def _float_list(value):
    if isinstance(value, str):
        return [float(item) for item in value.split(',')]
    return [float(item) for item in value]


def _calibrate_temp(config, emitter, design):
    energies = _option(config, 'energies_ghz')

    if config.inputs:
        if len(config.inputs) != 1:
            raise exceptions.ConfigError('{} takes at most 1 input file, got {}.'.format(
                config.command, len(config.inputs)), 'inputs')
        populations, file_energies = load_populations(config.inputs[0])
        if energies is None:
            energies = file_energies
    else:
        populations = _float_list(_option(config, 'populations', required=True))

    if energies is not None:
        energies = np.array(_float_list(energies)) * utils.GHZ * PhysicalConstants.planck
        fit = qubit_temperature(populations, energies)
    elif _option(config, 'ej_ghz') is not None:
        fit = temperature_from_populations(populations, _transmon(config))
    else:
        f01 = _option(config, 'f01_ghz', required=True) * utils.GHZ
        fit = qubit_temperature(populations[:2], [0.0, f01 * PhysicalConstants.planck])

    return {'temperature_mk': fit.temperature * 1e3}


def _synth(config, emitter, design):
    name = config.command.split()[-1]
    options = {key: value for key, value in config.options.items() if value is not None}
    for table, columns in synth.generate(name, config.seed, **options).items():
        emitter.table(table, columns, output_format=CSV)
    return {'generator': name}


HANDLERS = {
    'dispersion': (_dispersion, True),
    'kerr': (_kerr, True),
    's11': (_s11, True),
    'fit-fluxmap': (_fit_fluxmap, False),
    'fit-dimer': (_fit_dimer, False),
    'fit-gain': (_fit_gain, False),
    'noise-vis': (_noise_vis, False),
    'calibrate transmon': (_calibrate_transmon, False),
    'calibrate chi': (_calibrate_chi, False),
    'calibrate nmeas': (_calibrate_nmeas, False),
    'calibrate efficiency': (_calibrate_efficiency, False),
    'calibrate flux': (_calibrate_flux, False),
    'calibrate pointer': (_calibrate_pointer, False),
    'calibrate stark': (_calibrate_stark, False),
    'calibrate ramsey': (_calibrate_ramsey, False),
    'calibrate jumps': (_calibrate_jumps, False),
    'calibrate temp': (_calibrate_temp, False),
}
HANDLERS.update({'synth {}'.format(name): (_synth, False) for name in synth.GENERATORS})


def run_pipeline(config):

    """
        **Run one command and write its tables and result document**

        Tables are written as ``<command>_<table>.csv`` and the result document as
        ``<command>.json`` in the output directory. Identical configurations, inputs and seeds
        give byte-identical files.

        :param config: The run configuration
        :type config: PipelineConfig
        :return: The result document
        :rtype: ResultDocument
    """

    if config.command not in HANDLERS:
        raise exceptions.ConfigError('Unknown command {!r}.'.format(config.command), 'command')
    if config.output_format not in (CSV, JSON):
        raise exceptions.ConfigError('Unknown output format {!r}.'.format(config.output_format), 'format')

    handler, needs_design = HANDLERS[config.command]
    design = None
    provenance_inputs = list(config.inputs)
    if needs_design or config.design is not None:
        design, design_path = resolve_design(config.design)
        provenance_inputs.insert(0, design_path)

    os.makedirs(config.output_directory, exist_ok=True)
    emitter = _Emitter(config)

    logger.info('Running %s', config.command)
    payload = handler(config, emitter, design)
    payload['tables'] = emitter.tables

    document = ResultDocument(
        command={
            'verb': config.command,
            'options': {key: value for key, value in sorted(config.options.items()) if value is not None},
            'design': config.design,
            'inputs': [os.path.basename(path) for path in config.inputs],
            'format': config.output_format,
        },
        provenance=build_provenance(provenance_inputs, config.seed),
        payload=payload,
    )
    document.write(os.path.join(config.output_directory, '{}.json'.format(config.stem)))
    return document
