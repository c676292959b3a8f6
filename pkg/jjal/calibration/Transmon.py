import dataclasses
import logging
import math
import warnings

import numpy as np
import scipy.linalg

from jjal import exceptions
from jjal.circuit.PhysicalConstants import PhysicalConstants


logger = logging.getLogger(__name__)

CONVERGENCE = 1e-10
TOLERANCE = 1e-8
MAX_DOUBLINGS = 4
TRANSMON_RATIO = 50.0


@dataclasses.dataclass(frozen=True)
class TransmonParams:

    """
        **Transmon qubit parameters, energies in J**

        :param josephson_energy: Josephson energy E_J
        :type josephson_energy: float
        :param charging_energy: Charging energy E_c
        :type charging_energy: float
        :param gate_charge: Offset charge n_g in units of 2e
        :type gate_charge: float
        :param charge_cutoff: Largest charge state |n| kept in the basis
        :type charge_cutoff: int
    """

    josephson_energy: float
    charging_energy: float
    gate_charge: float = 0.0
    charge_cutoff: int = 30

    def __post_init__(self):
        if not self.charging_energy > 0:
            raise exceptions.InvalidParameter('Charging energy must be positive.', 'charging_energy')
        if self.josephson_energy < 0:
            raise exceptions.InvalidParameter('Josephson energy must not be negative.', 'josephson_energy')
        if self.charge_cutoff < 10:
            raise exceptions.InvalidParameter('Charge cutoff must be at least 10, got {}.'.format(
                self.charge_cutoff), 'charge_cutoff')

    @classmethod
    def from_frequencies(cls, ej_hz, ec_hz, **kwargs):
        return cls(ej_hz * PhysicalConstants.planck, ec_hz * PhysicalConstants.planck, **kwargs)

    @property
    def ratio(self):
        return self.josephson_energy / self.charging_energy


def charge_basis_hamiltonian(params, cutoff=None):

    """
        **Diagonal and off-diagonal of the charge basis Hamiltonian**

        4 E_c (n - n_g)^2 on the diagonal and -E_J / 2 between neighbouring charge states,
        for n = -cutoff ... cutoff.

        :return: (diagonal, off_diagonal)
        :rtype: tuple
    """

    cutoff = params.charge_cutoff if cutoff is None else cutoff
    charges = np.arange(-cutoff, cutoff + 1)
    diagonal = 4 * params.charging_energy * (charges - params.gate_charge) ** 2
    off_diagonal = np.full(2 * cutoff, -params.josephson_energy / 2)
    return diagonal, off_diagonal


def _lowest_levels(params, cutoff, n_levels):
    diagonal, off_diagonal = charge_basis_hamiltonian(params, cutoff)
    return scipy.linalg.eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                                         select='i', select_range=(0, n_levels - 1))


def _shift(levels, refined, scale):
    return np.max(np.abs(refined - levels) / np.maximum(np.abs(refined), scale))


def transmon_levels_charge_basis(params, n_levels):

    """
        **Lowest transmon levels from the charge basis**

        The cutoff is doubled until the requested levels change by less than 1e-10 relative.

        :param params: Transmon parameters
        :type params: TransmonParams
        :param n_levels: Number of levels
        :type n_levels: int
        :return: Energies in J, ascending
        :rtype: numpy.ndarray
    """

    cutoff = params.charge_cutoff
    if not 0 < n_levels <= 2 * cutoff - 2:
        raise exceptions.CutoffTooSmall('{} levels need a charge cutoff above {}.'.format(
            n_levels, cutoff), cutoff)

    levels = _lowest_levels(params, cutoff, n_levels)
    shift = np.inf
    for _ in range(MAX_DOUBLINGS):
        refined = _lowest_levels(params, 2 * cutoff, n_levels)
        shift = _shift(levels, refined, params.charging_energy)
        cutoff, levels = 2 * cutoff, refined
        if shift < CONVERGENCE:
            logger.debug('Charge basis converged at cutoff %d', cutoff)
            return levels

    if shift > TOLERANCE:
        raise exceptions.CutoffTooSmall('Levels still shift by {:.3g} at charge cutoff {}.'.format(
            shift, cutoff), cutoff)
    return levels


def transmon_levels_asymptotic(params, k):

    """
        **Transmon level k in the large E_J / E_c limit**

        E_k = -E_J + sqrt(8 E_J E_c) (k + 1/2) - E_c / 12 (6 k^2 + 6 k + 3)

        :param params: Transmon parameters
        :type params: TransmonParams
        :param k: Level index
        :type k: int
        :return: Energy in J
        :rtype: float
    """

    if params.ratio < TRANSMON_RATIO:
        warnings.warn('E_J / E_c = {:.3g} is below the transmon regime.'.format(params.ratio),
                      exceptions.TransmonRegimeWarning)

    e_j, e_c = params.josephson_energy, params.charging_energy
    return -e_j + math.sqrt(8 * e_j * e_c) * (k + 0.5) - e_c / 12 * (6 * k ** 2 + 6 * k + 3)
