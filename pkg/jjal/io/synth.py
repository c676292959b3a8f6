"""
    Seeded synthetic data for every fit family.

    Each generator takes a ``numpy.random.Generator`` and keyword options and returns the tables it
    produces, by table name, as column dictionaries whose keys follow the CSV schemas of
    ``jjal.io.tables``.
"""

import inspect
import logging

import numpy as np

from jjal import exceptions
from jjal.calibration.QuantumJumps import separation_for_fidelity
from jjal.calibration.Ramsey import ramsey_double, ramsey_single
from jjal.fitting.DimerFit import dimer_reflection
from jjal.fitting.FluxFit import flux_modulation_model
from jjal.fitting.GainFit import GainLobe, gain_trace


logger = logging.getLogger(__name__)


def fluxmap(rng, f0=7e9, gamma_l=0.9, l_b=0.5, i_offset=1e-3, i_min=-1.5, i_max=1.5, points=200, noise=0.0):
    current = np.linspace(i_min, i_max, points)
    frequency = flux_modulation_model(current, f0, gamma_l, l_b, i_offset)
    frequency = frequency + noise * rng.standard_normal(points)
    return {'fluxmap': {'bias_current_a': current, 'freq_hz': frequency}}


def dimer(rng, f_minus=5.75e9, f_plus=6.42e9, kappa_minus=139e6, kappa_plus=148e6, gamma_minus=0.0,
          gamma_plus=0.0, phase=0.3, points=1201, noise=0.0):

    """
        **Reflection trace of one dimer**

        Frequencies and rates are in Hz (rates are kappa / 2 pi). Complex Gaussian noise of
        standard deviation ``noise`` is added to each quadrature.
    """

    margin = 4 * max(kappa_minus, kappa_plus)
    frequency = np.linspace(f_minus - margin, f_plus + margin, points)
    values = dimer_reflection(2 * np.pi * frequency, 2 * np.pi * f_plus, 2 * np.pi * f_minus,
                              2 * np.pi * kappa_plus, 2 * np.pi * kappa_minus, 2 * np.pi * gamma_plus,
                              2 * np.pi * gamma_minus, phase)
    values = values + noise * (rng.standard_normal(points) + 1j * rng.standard_normal(points))
    return {'dimer': {'freq_hz': frequency, 're': values.real, 'im': values.imag}}


def gain(rng, gain_db=23.2, center=6e9, bandwidth=9.2e6, span=100e6, points=1001, noise_db=0.0):
    frequency = np.linspace(center - span / 2, center + span / 2, points)
    trace = gain_trace(frequency, [GainLobe(gain_db, center, bandwidth)])
    trace = trace + noise_db * rng.standard_normal(points)
    return {'gain': {'freq_hz': frequency, 'gain_db': trace}}


def ramsey(rng, mode='single', t2=6.5e-6, frequency=1e6, frequency_2=1.19e6, amplitude=0.5, offset=0.5,
           duration=20e-6, points=401, noise=0.0):
    delay = np.linspace(0.0, duration, points)
    if mode == 'single':
        signal = ramsey_single(delay, amplitude, t2, frequency, 0.0, offset)
    elif mode == 'double':
        signal = ramsey_double(delay, amplitude / 2, amplitude / 2, t2, frequency, frequency_2, 0.0, 0.0, offset)
    else:
        raise exceptions.InvalidParameter('Unknown Ramsey mode {!r}.'.format(mode), 'mode')
    signal = signal + noise * rng.standard_normal(points)
    return {'ramsey': {'delay_s': delay, 'signal': signal}}


def telegraph(rng, samples=100000, ground_mean=0.0, separation=8.0, sigma=1.0, fidelity=None, mean_dwell=500.0,
              sample_period=1e-6):

    """
        **Two-state quantum jump record**

        The state switches with probability 1 / ``mean_dwell`` per sample. With ``fidelity`` set,
        the separation of the two blobs is the one that gives this midpoint-threshold fidelity.
    """

    if fidelity is not None:
        separation = separation_for_fidelity(fidelity, sigma)

    switches = rng.random(samples) < 1.0 / mean_dwell
    state = np.cumsum(switches) % 2
    q = ground_mean + separation * state + sigma * rng.standard_normal(samples)
    time = np.arange(samples) * sample_period

    logger.debug('Telegraph record with %d jumps, separation %.3g', int(np.count_nonzero(np.diff(state))),
                 separation)
    return {
        'telegraph': {'t_s': time, 'q': q},
        'telegraph_truth': {'t_s': time, 'state': state},
    }


def psd(rng, center=6e9, bump_db=14.2, width=20e6, floor_dbm_hz=-140.0, span=400e6, points=801, noise_db=0.0):
    frequency = np.linspace(center - span / 2, center + span / 2, points)
    off = floor_dbm_hz + noise_db * rng.standard_normal(points)
    on = off + bump_db / (1 + (2 * (frequency - center) / width) ** 2) + noise_db * rng.standard_normal(points)
    return {
        'psd_on': {'freq_hz': frequency, 'psd_dbm_hz': on},
        'psd_off': {'freq_hz': frequency, 'psd_dbm_hz': off},
    }


GENERATORS = {
    'fluxmap': fluxmap,
    'dimer': dimer,
    'gain': gain,
    'ramsey': ramsey,
    'telegraph': telegraph,
    'psd': psd,
}


def generate(name, seed, **options):

    """
        **Run a generator with a fresh seeded random generator**

        :param name: Generator name, a key of ``GENERATORS``
        :type name: str
        :param seed: Random seed
        :type seed: int
        :return: Tables by name
        :rtype: dict
    """

    if name not in GENERATORS:
        raise exceptions.InvalidParameter('Unknown generator {!r}.'.format(name), 'generator')

    accepted = list(inspect.signature(GENERATORS[name]).parameters)[1:]
    unknown = sorted(set(options) - set(accepted))
    if unknown:
        raise exceptions.ConfigError('Unknown option {!r} for generator {}, expected one of {}.'.format(
            unknown[0], name, ', '.join(accepted)), unknown[0])
    return GENERATORS[name](np.random.default_rng(seed), **options)
