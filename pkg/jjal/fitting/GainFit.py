import dataclasses
import logging
import math

import numpy as np
import scipy.signal

from jjal import exceptions
from jjal import utils
from jjal.fitting.LeastSquares import least_squares_fit


logger = logging.getLogger(__name__)

LOBE_THRESHOLD_DB = 3.0
MAX_LOBES = 2


@dataclasses.dataclass(frozen=True)
class GainLobe:

    """
        **One fitted Lorentzian gain lobe**

        :param gain_db: Peak gain G0 in dB
        :type gain_db: float
        :param center_frequency: Lobe center in Hz
        :type center_frequency: float
        :param bandwidth: Full width at half maximum B in Hz
        :type bandwidth: float
    """

    gain_db: float
    center_frequency: float
    bandwidth: float

    @property
    def gain_bandwidth(self):
        return math.sqrt(utils.db_to_power(self.gain_db)) * self.bandwidth


@dataclasses.dataclass(frozen=True)
class GainFitParams:

    """
        **Gain lobes of an amplifier trace and their gain-bandwidth product**

        :param lobes: Fitted lobes sorted by frequency
        :type lobes: list
        :param gain_bandwidth: Mean sqrt(G0) B of the lobes in Hz, G0 in linear power units
        :type gain_bandwidth: float
        :param fit: Underlying least-squares result
        :type fit: FitResult
    """

    lobes: list
    gain_bandwidth: float
    fit: object = None


def lorentzian_gain(frequency, *params):

    """
        **Lorentzian lobes over a unity baseline in linear power units**

        G(f) = 1 + sum (G0 - 1) / (1 + (2 (f - f_center) / B)^2), so the gain is 0 dB far from
        the lobes and B is the full width at half maximum of G - 1. ``params`` holds
        (G0_linear, f_center, B) triples.
    """

    gain = np.ones_like(np.asarray(frequency, dtype=float))
    for peak, center, width in zip(params[0::3], params[1::3], params[2::3]):
        gain = gain + (peak - 1) / (1 + (2 * (frequency - center) / width) ** 2)
    return gain


def _seed_lobes(frequency, gain_db):
    peaks, properties = scipy.signal.find_peaks(gain_db, height=LOBE_THRESHOLD_DB, prominence=1.0)
    if len(peaks) == 0:
        raise exceptions.NoLobeFound('No gain lobe above {} dB.'.format(LOBE_THRESHOLD_DB))

    strongest = np.sort(peaks[np.argsort(properties['peak_heights'])[::-1][:MAX_LOBES]])
    seeds = []
    for peak in strongest:
        half = gain_db[peak] - 3.0
        left = peak
        while left > 0 and gain_db[left] > half:
            left -= 1
        right = peak
        while right < len(gain_db) - 1 and gain_db[right] > half:
            right += 1
        width = max(frequency[right] - frequency[left], frequency[1] - frequency[0])
        seeds.append((utils.db_to_power(gain_db[peak]), frequency[peak], width))
    return seeds


def fit_gain_profile(frequency, gain_db):

    """
        **Fit one or two Lorentzian lobes to a gain trace**

        Points above 3 dB are fitted in linear power units. Seeds come from the lobe maxima and
        their 3 dB crossings.

        :param frequency: Frequencies in Hz
        :type frequency: numpy.ndarray
        :param gain_db: Power gain in dB
        :type gain_db: numpy.ndarray
        :return: Fitted lobes and the mean gain-bandwidth product
        :rtype: GainFitParams
    """

    frequency = np.asarray(frequency, dtype=float)
    gain_db = np.asarray(gain_db, dtype=float)
    seeds = _seed_lobes(frequency, gain_db)

    mask = gain_db > LOBE_THRESHOLD_DB
    origin = frequency[mask].mean()
    unit = 1e6

    init, names, lower = [], [], []
    for index, (peak, center, width) in enumerate(seeds):
        init += [peak, (center - origin) / unit, width / unit]
        names += ['g0_{}'.format(index), 'center_{}'.format(index), 'bandwidth_{}'.format(index)]
        lower += [1.0, -np.inf, 1e-9]

    fit = least_squares_fit(lorentzian_gain, (frequency[mask] - origin) / unit, utils.db_to_power(gain_db[mask]),
                            init, bounds=(lower, [np.inf] * len(init)), names=names)

    lobes = []
    for index in range(len(seeds)):
        lobes.append(GainLobe(
            gain_db=float(utils.power_to_db(fit.parameters['g0_{}'.format(index)])),
            center_frequency=float(fit.parameters['center_{}'.format(index)] * unit + origin),
            bandwidth=float(fit.parameters['bandwidth_{}'.format(index)] * unit),
        ))
    lobes.sort(key=lambda lobe: lobe.center_frequency)
    product = float(np.mean([lobe.gain_bandwidth for lobe in lobes]))

    logger.info('Gain fit: %d lobes, sqrt(G0) B = %.4g MHz', len(lobes), product / 1e6)
    return GainFitParams(lobes=lobes, gain_bandwidth=product, fit=fit)


def gain_trace(frequency, lobes):

    """
        **Synthetic gain trace in dB from lobes**

        :param frequency: Frequencies in Hz
        :type frequency: numpy.ndarray
        :param lobes: Lobes to superpose
        :type lobes: list
        :rtype: numpy.ndarray
    """

    params = []
    for lobe in lobes:
        params += [utils.db_to_power(lobe.gain_db), lobe.center_frequency, lobe.bandwidth]
    return utils.power_to_db(lorentzian_gain(frequency, *params))


def compression_point(probe_power_dbm, gain_db, drop_db=1.0):

    """
        **Input power at which the gain has dropped by 1 dB**

        The small-signal gain is the gain at the weakest probe power; the crossing is linearly
        interpolated between the bracketing points.

        :param probe_power_dbm: Probe powers in dBm, increasing
        :type probe_power_dbm: numpy.ndarray
        :param gain_db: Gain at each probe power in dB
        :type gain_db: numpy.ndarray
        :param drop_db: Compression depth in dB
        :type drop_db: float
        :return: Compression input power in dBm, ``None`` when the gain never drops that far
        :rtype: float
    """

    power = np.asarray(probe_power_dbm, dtype=float)
    gain_db = np.asarray(gain_db, dtype=float)
    deficit = gain_db[0] - gain_db
    crossing = np.flatnonzero(deficit >= drop_db)

    if crossing.size == 0:
        return None

    index = crossing[0]
    if index == 0:
        return float(power[0])
    fraction = (drop_db - deficit[index - 1]) / (deficit[index] - deficit[index - 1])
    return float(power[index - 1] + fraction * (power[index] - power[index - 1]))


def saturation_figure(kappa, self_kerr):

    """
        **Ratio kappa / |K| of a mode**

        The 1 dB compression power of a Kerr amplifier grows with this ratio.

        :param kappa: External coupling rate
        :type kappa: float or numpy.ndarray
        :param self_kerr: Self-Kerr coefficient in the same units
        :type self_kerr: float or numpy.ndarray
        :rtype: float or numpy.ndarray
    """

    return np.asarray(kappa) / np.abs(self_kerr)
