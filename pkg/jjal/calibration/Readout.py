import dataclasses
import logging
import math
import warnings

import numpy as np

from jjal import exceptions
from jjal import utils
from jjal.circuit.PhysicalConstants import PhysicalConstants


logger = logging.getLogger(__name__)

COHERENT_STATE_WIDTH = 1 / math.sqrt(2)
LINEARITY_THRESHOLD = 0.98
CHAIN_EFFICIENCY = 0.5


@dataclasses.dataclass(frozen=True)
class StarkCalibration:

    """
        **Photon number calibration from AC-Stark shifted Ramsey frequencies**

        :param slope: Photons per unit squared drive amplitude
        :type slope: float
        :param photon_numbers: Mean photon number at each drive point
        :type photon_numbers: numpy.ndarray
        :param residuals: Photon numbers minus the linear fit through the origin
        :type residuals: numpy.ndarray
        :param r_squared: Uncentered coefficient of determination of the fit
        :type r_squared: float
    """

    slope: float
    photon_numbers: np.ndarray
    residuals: np.ndarray
    r_squared: float


def measurement_photon_number(mean_photons, kappa, gamma, duration):

    """
        **Photons collected during a measurement window**

        n_meas = n_r (kappa + gamma)^2 / (4 kappa) T_m

        :param mean_photons: Mean intra-resonator photon number n_r
        :type mean_photons: float
        :param kappa: External decay rate in rad/s
        :type kappa: float
        :param gamma: Internal decay rate in rad/s
        :type gamma: float
        :param duration: Integration time T_m in s
        :type duration: float
        :rtype: float
    """

    if kappa <= 0:
        raise exceptions.ZeroKappa('External decay rate must be positive, got {}.'.format(kappa))
    for name, value in (('mean_photons', mean_photons), ('gamma', gamma), ('duration', duration)):
        if value < 0:
            raise exceptions.InvalidParameter('{} must not be negative.'.format(name), name)

    return mean_photons * (kappa + gamma) ** 2 / (4 * kappa) * duration


def power_to_photon_flux(power_dbm, frequency):

    """
        **Photon flux of a microwave tone in photons per microsecond**

        :param power_dbm: Power in dBm
        :type power_dbm: float
        :param frequency: Tone frequency in Hz
        :type frequency: float
        :rtype: float
    """

    if frequency <= 0:
        raise exceptions.InvalidParameter('Frequency must be positive.', 'frequency')
    return utils.dbm_to_watt(power_dbm) / (PhysicalConstants.planck * frequency) * utils.MICROSECOND


def stark_photon_calibration(amplitude_squared, ramsey_frequency, bare_ramsey_frequency, chi):

    """
        **Calibrate the resonator photon number against drive power**

        Each AC-Stark shifted Ramsey frequency gives n_r = |f_R - f_R0| 2 pi / chi. The photon
        numbers are then fitted linearly through the origin.

        :param amplitude_squared: Squared drive amplitudes
        :type amplitude_squared: numpy.ndarray
        :param ramsey_frequency: Ramsey frequencies in Hz
        :type ramsey_frequency: numpy.ndarray
        :param bare_ramsey_frequency: Ramsey frequency without drive f_R0 in Hz
        :type bare_ramsey_frequency: float
        :param chi: Dispersive shift in rad/s
        :type chi: float
        :return: The calibration
        :rtype: StarkCalibration
    """

    amplitude_squared = np.asarray(amplitude_squared, dtype=float)
    ramsey_frequency = np.asarray(ramsey_frequency, dtype=float)

    if amplitude_squared.size < 3:
        raise exceptions.InsufficientData('Stark calibration needs at least 3 points.', amplitude_squared.size, 1)
    if chi <= 0:
        raise exceptions.InvalidParameter('Dispersive shift must be positive.', 'chi')

    photons = np.abs(ramsey_frequency - bare_ramsey_frequency) * 2 * math.pi / chi
    slope = float(amplitude_squared @ photons / (amplitude_squared @ amplitude_squared))
    residuals = photons - slope * amplitude_squared

    total = photons @ photons
    r_squared = 1.0 - float(residuals @ residuals) / total if total > 0 else 1.0
    if r_squared < LINEARITY_THRESHOLD:
        warnings.warn('Photon number is not linear in drive power (R^2 = {:.3f}).'.format(r_squared),
                      exceptions.NonlinearityWarning)

    logger.info('Stark calibration: %.4g photons per amplitude^2', slope)
    return StarkCalibration(slope, photons, residuals, r_squared)


def measurement_efficiency(sigma):

    """
        **Measurement efficiency from the measured quadrature width**

        eta = sigma_ideal^2 / sigma^2 with sigma_ideal = 1/sqrt(2) for a coherent state.

        :param sigma: Measured width in sqrt(photons)
        :type sigma: float
        :rtype: float
    """

    if sigma <= 0:
        raise exceptions.InvalidParameter('Width must be positive.', 'sigma')
    return COHERENT_STATE_WIDTH ** 2 / sigma ** 2


def quantum_efficiency_bound(efficiency, chain_efficiency=CHAIN_EFFICIENCY):

    """
        **Lower bound on the amplifier quantum efficiency**

        The measured efficiency divided by the efficiency of the lossy chain before the amplifier.
    """

    if not 0 < chain_efficiency <= 1:
        raise exceptions.InvalidParameter('Chain efficiency must lie in (0, 1].', 'chain_efficiency')
    return efficiency / chain_efficiency


def pointer_angle(chi, kappa):

    """
        **Angle between the ground and excited pointer states in rad**

        :param chi: Dispersive shift
        :type chi: float
        :param kappa: Resonator decay rate, same unit as chi
        :type kappa: float
        :return: 4 atan(chi / kappa)
        :rtype: float
    """

    if kappa <= 0:
        raise exceptions.InvalidParameter('Decay rate must be positive.', 'kappa')
    return 4 * math.atan(chi / kappa)
