import dataclasses
import logging
import math

import numpy as np
import scipy.signal

from jjal.fitting.LeastSquares import least_squares_fit


logger = logging.getLogger(__name__)

# Internal fit units: frequencies and rates in units of 2 pi x 1 MHz.
RATE_UNIT = 2 * math.pi * 1e6


@dataclasses.dataclass(frozen=True)
class DimerFitParams:

    """
        **Parameters of the two-mode reflection model, angular rates in rad/s**

        :param omega_plus: Upper mode frequency
        :type omega_plus: float
        :param omega_minus: Lower mode frequency
        :type omega_minus: float
        :param kappa_plus: External coupling rate of the upper mode
        :type kappa_plus: float
        :param kappa_minus: External coupling rate of the lower mode
        :type kappa_minus: float
        :param gamma_plus: Internal loss rate of the upper mode
        :type gamma_plus: float
        :param gamma_minus: Internal loss rate of the lower mode
        :type gamma_minus: float
        :param phase: Global phase offset in rad
        :type phase: float
    """

    omega_plus: float
    omega_minus: float
    kappa_plus: float
    kappa_minus: float
    gamma_plus: float = 0.0
    gamma_minus: float = 0.0
    phase: float = 0.0

    def as_tuple(self):
        return dataclasses.astuple(self)

    def derived(self):
        asymmetry, omega_1, omega_2, coupling = dimer_asymmetry(self.omega_plus, self.omega_minus,
                                                                self.kappa_plus, self.kappa_minus)
        return {'asymmetry': asymmetry, 'omega_1': omega_1, 'omega_2': omega_2, 'coupling': coupling}


def single_port_reflection(omega, omega_m, kappa, gamma):

    """
        **Reflection of a linear one-port resonator, engineering convention**

        -1 + [kappa (kappa + gamma) / 2 - j kappa (w - w_m)] / [(w - w_m)^2 + (kappa + gamma)^2 / 4]
    """

    detuning = omega - omega_m
    total = kappa + gamma
    return -1 + (kappa * total / 2 - 1j * kappa * detuning) / (detuning ** 2 + total ** 2 / 4)


def dimer_reflection(omega, omega_plus, omega_minus, kappa_plus, kappa_minus, gamma_plus=0.0, gamma_minus=0.0,
                     phase=0.0):

    """
        **Reflection of a dimer, the product of two one-port resonators times exp(j phase)**
    """

    return (single_port_reflection(omega, omega_plus, kappa_plus, gamma_plus) *
            single_port_reflection(omega, omega_minus, kappa_minus, gamma_minus) * np.exp(1j * phase))


def dimer_asymmetry(omega_plus, omega_minus, kappa_plus, kappa_minus):

    """
        **Bare frequencies and coupling of a dimer from its eigenmodes**

        Treats the dimer as two oscillators w_1, w_2 coupled with rate J where only the first
        one couples to the port. Works for angular frequencies or frequencies in Hz alike.

        :param omega_plus: Upper mode frequency
        :type omega_plus: float
        :param omega_minus: Lower mode frequency
        :type omega_minus: float
        :param kappa_plus: External coupling of the upper mode
        :type kappa_plus: float
        :param kappa_minus: External coupling of the lower mode
        :type kappa_minus: float
        :return: (A, w_1, w_2, J) with A = (w_1 - w_2)^2
        :rtype: tuple
    """

    splitting = omega_plus - omega_minus
    detuning = (kappa_plus - kappa_minus) * splitting / (kappa_plus + kappa_minus)
    midpoint = (omega_plus + omega_minus) / 2
    coupling = math.sqrt(max(splitting ** 2 - detuning ** 2, 0.0)) / 2
    return detuning ** 2, midpoint + detuning / 2, midpoint - detuning / 2, coupling


def dimer_eigenmodes(omega_1, omega_2, coupling, kappa):

    """
        **Dimer eigenmodes and their coupling rates from the bare oscillators**

        :return: (w_+, w_-, kappa_+, kappa_-)
        :rtype: tuple
    """

    detuning = omega_1 - omega_2
    root = math.sqrt(detuning ** 2 / 4 + coupling ** 2)
    midpoint = (omega_1 + omega_2) / 2
    share = detuning / math.sqrt(4 * coupling ** 2 + detuning ** 2)
    return midpoint + root, midpoint - root, kappa / 2 * (1 + share), kappa / 2 * (1 - share)


def _initial_guess(trace):
    omega = 2 * np.pi * trace.frequencies
    delay = trace.group_delay()
    peaks, _ = scipy.signal.find_peaks(delay)

    if len(peaks) >= 2:
        top = np.sort(peaks[np.argsort(delay[peaks])[-2:]])
    else:
        top = np.array([len(omega) // 3, 2 * len(omega) // 3])

    omega_minus, omega_plus = omega[top]
    kappa_minus, kappa_plus = (min(4.0 / delay[index], omega_plus - omega_minus) for index in top)

    bare = dimer_reflection(omega, omega_plus, omega_minus, kappa_plus, kappa_minus)
    phase = float(np.angle(np.sum(trace.values * np.conj(bare))))
    return DimerFitParams(omega_plus, omega_minus, kappa_plus, kappa_minus, 0.0, 0.0, phase)


def fit_dimer_reflection(trace, init=None):

    """
        **Fit the two-mode reflection model to a dimer trace**

        Seeds come from the two largest group-delay peaks when ``init`` is omitted. Fitted rates
        are angular (rad/s); the result also carries the derived asymmetry A, w_1, w_2 and J.

        :param trace: Reflection trace spanning both dimer modes
        :type trace: ComplexTrace
        :param init: Start parameters
        :type init: DimerFitParams
        :return: Fit result with parameters named after the DimerFitParams fields
        :rtype: FitResult
    """

    if init is None:
        init = _initial_guess(trace)

    scaled_init = np.array(init.as_tuple()) / np.array([RATE_UNIT] * 6 + [1.0])
    names = [field.name for field in dataclasses.fields(DimerFitParams)]

    def model(omega, *params):
        return dimer_reflection(omega, *params)

    lower = (0.0, 0.0, 1e-9, 1e-9, 0.0, 0.0, -np.inf)
    upper = (np.inf,) * 7
    fit = least_squares_fit(model, trace.frequencies * 2 * np.pi / RATE_UNIT, trace.values, scaled_init,
                            bounds=(lower, upper), names=names)

    scales = {name: (name, RATE_UNIT) for name in names[:6]}
    fit = fit.rescaled(scales)
    fit.parameters['phase'] = float(np.angle(np.exp(1j * fit.parameters['phase'])))

    if fit.parameters['omega_plus'] < fit.parameters['omega_minus']:
        fit = _swap_modes(fit)

    params = DimerFitParams(**fit.parameters)
    fit.derived = params.derived()

    logger.info('Dimer fit: 2J/2pi = %.4g MHz, residual %.3g', fit.derived['coupling'] / np.pi / 1e6,
                fit.residual_rms)
    return fit


def _swap_modes(fit):
    pairs = (('omega_plus', 'omega_minus'), ('kappa_plus', 'kappa_minus'), ('gamma_plus', 'gamma_minus'))
    for table in (fit.parameters, fit.standard_errors):
        for first, second in pairs:
            table[first], table[second] = table[second], table[first]
    return fit
