import dataclasses
import logging
import math

import numpy as np

from jjal import exceptions
from jjal.calibration.Transmon import transmon_levels_asymptotic
from jjal.circuit.PhysicalConstants import PhysicalConstants


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ThermalFit:

    """
        **Boltzmann temperature of a qubit**

        :param level_energies: Level energies in J
        :type level_energies: numpy.ndarray
        :param populations: Populations, counts or fractions
        :type populations: numpy.ndarray
        :param temperature: Temperature in K
        :type temperature: float
    """

    level_energies: np.ndarray
    populations: np.ndarray
    temperature: float


def qubit_temperature(populations, energies, method='auto'):

    """
        **Qubit temperature from level populations**

        With two levels, T = (E_1 - E_0) / (k_B ln(N_0 / N_1)). With more levels, or with
        ``method='fit'``, ln(N_k / N_0) is fitted against -(E_k - E_0) / k_B by a line through the
        origin, whose slope is 1 / T.

        :param populations: Populations N_k, ground state first
        :type populations: list
        :param energies: Level energies E_k in J
        :type energies: list
        :param method: ``auto``, ``two-level`` or ``fit``
        :type method: str
        :return: The fitted temperature
        :rtype: ThermalFit
    """

    populations = np.asarray(populations, dtype=float)
    energies = np.asarray(energies, dtype=float)

    if populations.size < 2 or populations.shape != energies.shape:
        raise exceptions.InsufficientData('Need matching populations and energies of at least two levels.',
                                          populations.size, 2)
    if np.any(populations < 0):
        raise exceptions.InvalidParameter('Populations must not be negative.', 'populations')
    if populations[1] >= populations[0]:
        raise exceptions.InvertedPopulation('Excited population {} is not below the ground population {}.'.format(
            populations[1], populations[0]))

    if method == 'auto':
        method = 'two-level' if populations.size == 2 else 'fit'

    boltzmann = PhysicalConstants.boltzmann
    if method == 'two-level':
        if populations[1] == 0:
            temperature = 0.0
        else:
            temperature = (energies[1] - energies[0]) / (boltzmann * math.log(populations[0] / populations[1]))
    elif method == 'fit':
        occupied = populations > 0
        if np.count_nonzero(occupied) < 2:
            temperature = 0.0
        else:
            x = -(energies[occupied] - energies[0]) / boltzmann
            y = np.log(populations[occupied] / populations[0])
            # Line through the ground level: ln(N_0 / N_0) = 0 at E_0.
            slope = np.dot(x, y) / np.dot(x, x)
            if slope <= 0:
                raise exceptions.InvertedPopulation('Populations do not decrease with energy.')
            temperature = 1.0 / slope
    else:
        raise exceptions.InvalidParameter('Unknown method {!r}.'.format(method), 'method')

    logger.info('Qubit temperature %.4g mK', temperature * 1e3)
    return ThermalFit(energies, populations, float(temperature))


def temperature_from_populations(populations, transmon):

    """
        **Qubit temperature using the asymptotic transmon levels**

        :param populations: Populations N_k, ground state first
        :type populations: list
        :param transmon: Transmon parameters
        :type transmon: TransmonParams
        :rtype: ThermalFit
    """

    energies = [transmon_levels_asymptotic(transmon, k) for k in range(len(populations))]
    return qubit_temperature(populations, energies)
