import dataclasses
import logging
import warnings

import numpy as np
import scipy.signal

from jjal import exceptions
from jjal.fitting.LeastSquares import least_squares_fit


logger = logging.getLogger(__name__)

# Multiplicative perturbations of the period seed tried by the multi-start.
PERIOD_SEEDS = (1.0, 0.9, 1.1, 0.75, 1.25)
TIE_TOLERANCE = 1e-9


@dataclasses.dataclass(frozen=True)
class FluxFitParams:

    """
        **Parameters of the flux modulation of one mode**

        :param f0: Mode frequency at zero flux in Hz
        :type f0: float
        :param gamma_l: Josephson inductance participation ratio, 0 < gamma_l <= 1
        :type gamma_l: float
        :param l_b: Flux quanta per ampere of bias current
        :type l_b: float
        :param i_offset: Bias current offset in A
        :type i_offset: float
    """

    f0: float
    gamma_l: float
    l_b: float
    i_offset: float


def flux_tuned_frequency(f0, gamma_l, flux):

    """
        **Frequency of a mode whose inductance is partly a flux-tuned SQUID**

        f0 / sqrt(1 + gamma_l (1/|cos(pi flux)| - 1)), the same as
        f0 / sqrt(1 - gamma_l + gamma_l / |cos(pi flux)|). Exactly f0 at zero flux.

        :param f0: Frequency at zero flux in Hz
        :type f0: float
        :param gamma_l: Participation ratio of the SQUID inductance
        :type gamma_l: float
        :param flux: Flux in units of the flux quantum
        :type flux: float or numpy.ndarray
        :rtype: float or numpy.ndarray
    """

    with np.errstate(divide='ignore'):
        stretch = 1.0 / np.abs(np.cos(np.pi * np.asarray(flux, dtype=float))) - 1.0
    return f0 / np.sqrt(1.0 + gamma_l * stretch)


def flux_modulation_model(current, f0, gamma_l, l_b, i_offset):

    """
        **Mode frequency versus bias current**

        :param current: Bias current in A
        :type current: numpy.ndarray
        :rtype: numpy.ndarray
    """

    return flux_tuned_frequency(f0, gamma_l, l_b * (np.asarray(current, dtype=float) + i_offset))


def _period_estimates(current, frequency):
    order = np.argsort(current)
    current, frequency = current[order], frequency[order]
    span = current[-1] - current[0]

    uniform = np.linspace(current[0], current[-1], current.size)
    resampled = np.interp(uniform, current, frequency)
    resampled = resampled - resampled.mean()
    padded = 16 * current.size
    spectrum = np.abs(np.fft.rfft(resampled, padded))
    rates = np.fft.rfftfreq(padded, uniform[1] - uniform[0])
    fft_period = 1.0 / rates[1 + np.argmax(spectrum[1:])]

    estimates = [fft_period]
    for sign in (1, -1):
        extrema, _ = scipy.signal.find_peaks(sign * frequency, prominence=0.1 * np.ptp(frequency))
        if len(extrema) >= 2:
            estimates.append(float(np.median(np.diff(current[extrema]))))

    logger.debug('Flux period estimates %s over a span of %.4g A', estimates, span)
    return estimates


def _fold_offset(i_offset, l_b):
    period = 1.0 / l_b
    return (i_offset + period / 2) % period - period / 2


def fit_flux_modulation(current, frequency, init=None):

    """
        **Fit the flux modulation of a mode frequency**

        Fits f(I) = f0 / sqrt(1 - gamma_l + gamma_l / |cos(pi l_b (I + I_offset))|). Without
        ``init``, l_b is seeded from the periodicity of the data (FFT and extremum spacing) and
        I_offset from the maximum; five perturbed seeds are tried and the smallest residual wins,
        ties going to the smallest |I_offset|.

        :param current: Bias currents in A
        :type current: numpy.ndarray
        :param frequency: Mode frequencies in Hz
        :type frequency: numpy.ndarray
        :param init: Start parameters
        :type init: FluxFitParams
        :return: Fit result with parameters ``f0``, ``gamma_l``, ``l_b`` and ``i_offset``
        :rtype: FitResult
    """

    current = np.asarray(current, dtype=float)
    frequency = np.asarray(frequency, dtype=float)
    if current.size < 4:
        raise exceptions.InsufficientData('{} points for 4 parameters.'.format(current.size), current.size, 4)

    if init is not None:
        seeds = [init]
    else:
        top = int(np.argmax(frequency))
        fft_period, *spacings = _period_estimates(current, frequency)
        base = spacings[0] if spacings else fft_period
        periods = [base * factor for factor in PERIOD_SEEDS]
        if spacings:
            periods.append(fft_period)
        seeds = [FluxFitParams(frequency[top], 0.5, 1.0 / period, -current[top]) for period in periods]

    names = [field.name for field in dataclasses.fields(FluxFitParams)]
    lower = (0.0, 1e-6, 1e-12, -np.inf)
    upper = (np.inf, 1.0, np.inf, np.inf)
    scale = np.array([1e9, 1.0, 1.0, 1.0])

    best = None
    for seed in seeds:
        start = np.array(dataclasses.astuple(seed)) / scale
        fit = least_squares_fit(flux_modulation_model, current, frequency / 1e9, start,
                                bounds=(lower, upper), names=names)
        fit.parameters['i_offset'] = _fold_offset(fit.parameters['i_offset'], fit.parameters['l_b'])

        if best is None or _better(fit, best):
            best = fit

    best = best.rescaled({'f0': ('f0', 1e9)})
    best.residual_rms *= 1e9

    coverage = np.ptp(current) * best.parameters['l_b']
    best.derived = {'flux_periods_covered': float(coverage)}
    if coverage < 0.5:
        warnings.warn('Data covers {:.3g} flux periods, l_b is poorly constrained.'.format(coverage),
                      exceptions.IdentifiabilityWarning)

    logger.info('Flux fit: f0 = %.6g GHz, gamma_L = %.4g', best.parameters['f0'] / 1e9, best.parameters['gamma_l'])
    return best


def _better(candidate, incumbent):
    tolerance = max(TIE_TOLERANCE * incumbent.residual_rms, 1e-12)
    if candidate.residual_rms < incumbent.residual_rms - tolerance:
        return True
    if abs(candidate.residual_rms - incumbent.residual_rms) <= tolerance:
        return abs(candidate.parameters['i_offset']) < abs(incumbent.parameters['i_offset'])
    return False
