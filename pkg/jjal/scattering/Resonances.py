import dataclasses
import logging
import math

import numpy as np
import scipy.optimize
import scipy.signal

from jjal import exceptions
from jjal.fitting.DimerFit import dimer_asymmetry
from jjal.fitting.LeastSquares import least_squares_fit
from jjal.scattering.ABCD import array_cascade, check_grid, grounded_reflection


logger = logging.getLogger(__name__)

WINDOW_LINEWIDTHS = 3.0
COARSE_STEP = 1e6
FINE_STEP = 1e4
ROOT_TOLERANCE = 1.0
MAX_PHASE_STEP = 0.2
SLOPE_ATTEMPTS = 6


@dataclasses.dataclass(frozen=True)
class ResonanceEstimate:

    """
        **Resonance found in a reflection trace**

        :param center_frequency: Resonance frequency in Hz
        :type center_frequency: float
        :param external_coupling: External coupling rate kappa / 2 pi in Hz
        :type external_coupling: float
        :param quality: ``ok``, ``edge`` when the fit window was cut by the trace edge, or ``unconverged``
        :type quality: str
    """

    center_frequency: float
    external_coupling: float
    quality: str = 'ok'


@dataclasses.dataclass(frozen=True)
class DimerCoupling:

    """
        **Dimer parameters read off a simulated or measured trace, all in Hz**
    """

    f_minus: float
    f_plus: float
    kappa_minus: float
    kappa_plus: float
    coupling: float
    f_1: float
    f_2: float


def _phase_profile(x, phase_center, slope, x0, width):
    return phase_center + slope * x - 2 * np.arctan(2 * (x - x0) / width)


def _refine(frequencies, phase, peak_frequency, kappa_estimate):
    x = (frequencies - peak_frequency) / kappa_estimate
    mid = np.interp(peak_frequency, frequencies, phase)

    fit = least_squares_fit(
        _phase_profile, x, phase, init=(mid, 0.0, 0.0, 1.0),
        bounds=((-np.inf, -np.inf, -WINDOW_LINEWIDTHS, 1e-6), (np.inf, np.inf, WINDOW_LINEWIDTHS, 10.0)),
        names=('phase_center', 'slope', 'x0', 'width'),
    )
    center = peak_frequency + fit['x0'] * kappa_estimate
    return center, fit['width'] * kappa_estimate, fit.converged


def extract_resonances(trace, min_phase_drop=math.pi):

    """
        **Locate resonances of a reflection trace**

        Candidates are maxima of the group delay. A candidate is kept when the phase drops by
        at least ``min_phase_drop`` within three estimated linewidths on either side; the
        center and linewidth are then refined by fitting the one-port phase profile
        phase_c - 2 atan(2 (f - f0) / kappa) plus a linear background on that window.

        :param trace: The reflection trace
        :type trace: ComplexTrace
        :param min_phase_drop: Phase drop in rad required to accept a candidate
        :type min_phase_drop: float
        :return: Resonances sorted by frequency
        :rtype: list
    """

    frequencies = trace.frequencies
    phase = trace.phase()
    delay = -np.gradient(phase, frequencies)

    peaks, _ = scipy.signal.find_peaks(delay)
    peaks = [peak for peak in peaks[np.argsort(delay[peaks])[::-1]] if delay[peak] > 0]

    estimates = []
    for peak in peaks:
        kappa = 4.0 / delay[peak]
        if any(abs(frequencies[peak] - found.center_frequency) < found.external_coupling for found in estimates):
            continue

        start = frequencies[peak] - WINDOW_LINEWIDTHS * kappa
        stop = frequencies[peak] + WINDOW_LINEWIDTHS * kappa
        mask = (frequencies >= start) & (frequencies <= stop)
        if np.count_nonzero(mask) < 8:
            continue

        window_phase = phase[mask]
        if window_phase[0] - window_phase[-1] < min_phase_drop:
            continue

        center, width, converged = _refine(frequencies[mask], window_phase, frequencies[peak], kappa)
        if not frequencies[0] <= center <= frequencies[-1] or width <= 0:
            logger.debug('Dropped candidate at %.6g GHz, fit left the trace', frequencies[peak] / 1e9)
            continue

        if not converged:
            quality = 'unconverged'
        elif start < frequencies[0] or stop > frequencies[-1]:
            quality = 'edge'
        else:
            quality = 'ok'
        estimates.append(ResonanceEstimate(float(center), float(width), quality))

    if not estimates:
        raise exceptions.NoResonanceFound('No full phase winding found between {:.4g} and {:.4g} GHz.'.format(
            frequencies[0] / 1e9, frequencies[-1] / 1e9))

    logger.info('Found %d resonances', len(estimates))
    return sorted(estimates, key=lambda estimate: estimate.center_frequency)


def _shorted_series(design, flux, frequency):
    return array_cascade(design, flux, [frequency]).b.imag[0]


def _reflection(design, flux, frequencies):
    return grounded_reflection(array_cascade(design, flux, frequencies), design.port_impedance)


def _local_linewidth(design, flux, center, step):
    # -d(phase)/df = 4 / kappa at the center of a winding.
    for _ in range(SLOPE_ATTEMPTS):
        below, above = _reflection(design, flux, [center - step, center + step])
        drop = abs(np.angle(above * np.conj(below)))
        if drop < MAX_PHASE_STEP:
            break
        step /= 10
    if drop == 0:
        return math.inf
    return 8 * step / drop


def find_resonances(design, flux, f_start, f_stop, coarse_step=COARSE_STEP, fine_step=FINE_STEP):

    """
        **Resonances of a design from its transmission matrix cascade**

        The reflection of the lossless array passes through -1 once per phase winding, where
        the input impedance B / D vanishes. A coarse grid brackets the sign changes of B, which
        are then refined by root finding. A bracket whose root reflects at +1 is a pole of B and
        is dropped. The linewidth comes from the phase slope at the center, -d(phase)/df = 4 / kappa.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :param f_start: Lowest frequency in Hz
        :type f_start: float
        :param f_stop: Highest frequency in Hz
        :type f_stop: float
        :param coarse_step: Step of the coarse grid in Hz
        :type coarse_step: float
        :param fine_step: Largest frequency step used for the phase slope, in Hz
        :type fine_step: float
        :return: Resonances sorted by frequency
        :rtype: list
    """

    frequencies = check_grid(design, np.arange(f_start, f_stop, coarse_step))
    series = array_cascade(design, flux, frequencies).b.imag
    signs = np.sign(series)

    centers = frequencies[signs == 0].tolist()
    for index in np.flatnonzero(signs[:-1] * signs[1:] < 0):
        centers.append(scipy.optimize.brentq(lambda frequency: _shorted_series(design, flux, frequency),
                                             frequencies[index], frequencies[index + 1], xtol=ROOT_TOLERANCE))

    estimates = []
    for center in sorted(centers):
        if _reflection(design, flux, [center])[0].real > 0:
            logger.debug('Dropped pole of B at %.6g GHz', center / 1e9)
            continue

        kappa = _local_linewidth(design, flux, center, fine_step)
        inside = f_start <= center - WINDOW_LINEWIDTHS * kappa and center + WINDOW_LINEWIDTHS * kappa <= f_stop
        estimates.append(ResonanceEstimate(float(center), float(kappa), 'ok' if inside else 'edge'))

    if not estimates:
        raise exceptions.NoResonanceFound('No resonance of the array between {:.4g} and {:.4g} GHz.'.format(
            f_start / 1e9, f_stop / 1e9))

    logger.info('Found %d resonances of the array between %.4g and %.4g GHz', len(estimates), f_start / 1e9,
                f_stop / 1e9)
    return estimates


def dimer_couplings(trace):

    """
        **Dimer frequencies, coupling rates and hybridization from a reflection trace**

        Consecutive resonances are paired as (f_-, f_+) dimers; an unpaired highest resonance is ignored.

        :param trace: The reflection trace
        :type trace: ComplexTrace
        :return: One record per dimer
        :rtype: list
    """

    resonances = extract_resonances(trace)
    dimers = []

    for lower, upper in zip(resonances[0::2], resonances[1::2]):
        _, f_1, f_2, coupling = dimer_asymmetry(upper.center_frequency, lower.center_frequency,
                                                upper.external_coupling, lower.external_coupling)
        dimers.append(DimerCoupling(
            f_minus=lower.center_frequency,
            f_plus=upper.center_frequency,
            kappa_minus=lower.external_coupling,
            kappa_plus=upper.external_coupling,
            coupling=coupling,
            f_1=f_1,
            f_2=f_2,
        ))

    return dimers
