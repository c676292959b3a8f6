import logging

import numpy as np
import scipy.signal

from jjal import exceptions
from jjal.fitting.LeastSquares import least_squares_fit


logger = logging.getLogger(__name__)

SINGLE = 'single'
DOUBLE = 'double'
# Internal fit units: microseconds and megahertz.
TIME_UNIT = 1e-6
FREQUENCY_UNIT = 1e6


def ramsey_single(delay, amplitude, t2, frequency, phase, offset):

    """
        **Exponentially damped cosine**

        A exp(-t / T2*) cos(2 pi f_R t + phi) + offset
    """

    return amplitude * np.exp(-delay / t2) * np.cos(2 * np.pi * frequency * delay + phase) + offset


def ramsey_double(delay, amplitude_1, amplitude_2, t2, frequency_1, frequency_2, phase_1, phase_2, offset):

    """
        **Two damped cosines with a shared decay time**
    """

    envelope = np.exp(-delay / t2)
    return (amplitude_1 * envelope * np.cos(2 * np.pi * frequency_1 * delay + phase_1) +
            amplitude_2 * envelope * np.cos(2 * np.pi * frequency_2 * delay + phase_2) + offset)


def _spectral_peaks(delay, signal, count):
    padded = 16 * signal.size
    step = delay[1] - delay[0]
    spectrum = np.fft.rfft(signal - signal.mean(), padded)
    frequencies = np.fft.rfftfreq(padded, step)
    magnitude = np.abs(spectrum)

    peaks, _ = scipy.signal.find_peaks(magnitude)
    peaks = peaks[np.argsort(magnitude[peaks])[::-1][:count]] if peaks.size else np.array([1])
    if peaks.size < count:
        peaks = np.append(peaks, [peaks[0]] * (count - peaks.size))

    amplitudes = 2 * magnitude[peaks] / signal.size
    return frequencies[peaks], amplitudes, np.angle(spectrum[peaks])


def ramsey_fit(delay, signal, mode=SINGLE):

    """
        **Fit a Ramsey fringe**

        ``single`` fits A exp(-t/T2*) cos(2 pi f_R t + phi) + offset, ``double`` fits two cosines
        with a shared T2*. Frequencies are seeded from a zero-padded FFT. A vanishing amplitude
        leaves T2* and f_R undetermined, which shows as ``identifiable`` being False.

        :param delay: Delays in s, evenly spaced
        :type delay: numpy.ndarray
        :param signal: Measured signal
        :type signal: numpy.ndarray
        :param mode: ``single`` or ``double``
        :type mode: str
        :return: Fit result, times in s and frequencies in Hz
        :rtype: FitResult
    """

    delay = np.asarray(delay, dtype=float)
    signal = np.asarray(signal, dtype=float)
    if mode not in (SINGLE, DOUBLE):
        raise exceptions.InvalidParameter('Unknown Ramsey mode {!r}.'.format(mode), 'mode')

    scaled = delay / TIME_UNIT
    span = scaled[-1] - scaled[0]
    frequencies, amplitudes, phases = _spectral_peaks(scaled, signal, 1 if mode == SINGLE else 2)
    offset = float(signal.mean())

    if mode == SINGLE:
        init = (amplitudes[0], span / 3, frequencies[0], phases[0], offset)
        names = ('amplitude', 't2', 'frequency', 'phase', 'offset')
        lower = (0.0, 1e-6, 0.0, -np.inf, -np.inf)
        model = ramsey_single
        scales = {'t2': ('t2', TIME_UNIT), 'frequency': ('frequency', FREQUENCY_UNIT)}
    else:
        order = np.argsort(frequencies)
        frequencies, amplitudes, phases = frequencies[order], amplitudes[order], phases[order]
        init = (amplitudes[0], amplitudes[1], span / 3, frequencies[0], frequencies[1], phases[0], phases[1], offset)
        names = ('amplitude_1', 'amplitude_2', 't2', 'frequency_1', 'frequency_2', 'phase_1', 'phase_2', 'offset')
        lower = (0.0, 0.0, 1e-6, 0.0, 0.0, -np.inf, -np.inf, -np.inf)
        model = ramsey_double
        scales = {'t2': ('t2', TIME_UNIT), 'frequency_1': ('frequency_1', FREQUENCY_UNIT),
                  'frequency_2': ('frequency_2', FREQUENCY_UNIT)}

    fit = least_squares_fit(model, scaled, signal, init, bounds=(lower, [np.inf] * len(init)), names=names)
    fit = fit.rescaled(scales)

    if not fit.identifiable:
        logger.warning('Ramsey fit is not identifiable, the fringe amplitude is too small')
    logger.info('Ramsey fit (%s): T2* = %.4g us', mode, fit.parameters['t2'] / TIME_UNIT)
    return fit
