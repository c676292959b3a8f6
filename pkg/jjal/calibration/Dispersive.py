import dataclasses
import logging
import math
import warnings

import numpy as np
import scipy.linalg

from jjal import exceptions
from jjal.calibration.Transmon import charge_basis_hamiltonian
from jjal.circuit.PhysicalConstants import PhysicalConstants


logger = logging.getLogger(__name__)

FOCK_START = 5
FOCK_LIMIT = 80
CHI_TOLERANCE = 1e3
DISPERSIVE_RATIO = 0.1
# Bare (qubit level, photon number) pairs identified among the dressed states.
TRACKED_STATES = ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))


@dataclasses.dataclass(frozen=True)
class ResonatorParams:

    """
        **Readout resonator coupled to the qubit**

        :param frequency: Bare resonator frequency f_r in Hz
        :type frequency: float
        :param kappa: External decay rate in rad/s
        :type kappa: float
        :param gamma: Internal decay rate in rad/s
        :type gamma: float
        :param coupling: Coupling rate g in rad/s
        :type coupling: float
    """

    frequency: float
    kappa: float
    gamma: float = 0.0
    coupling: float = 0.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise exceptions.InvalidParameter('Resonator kappa must be positive.', 'kappa')
        if self.gamma < 0:
            raise exceptions.InvalidParameter('Resonator gamma must not be negative.', 'gamma')


@dataclasses.dataclass(frozen=True)
class DispersiveParams:

    """
        **Dressed parameters of the coupled qubit and resonator**

        :param chi: Dispersive shift chi_qr in rad/s, the resonator frequency with the qubit in g minus in e
        :type chi: float
        :param qubit_anharmonicity: Magnitude of the qubit anharmonicity alpha_q in rad/s
        :type qubit_anharmonicity: float
        :param qubit_frequency: Dressed qubit frequency in Hz
        :type qubit_frequency: float
        :param resonator_frequency: Dressed resonator frequency with the qubit in g, in Hz
        :type resonator_frequency: float
        :param resonator_anharmonicity: Resonator anharmonicity alpha_r in rad/s
        :type resonator_anharmonicity: float
        :param fock_cutoff: Fock space dimension the result converged at
        :type fock_cutoff: int
    """

    chi: float
    qubit_anharmonicity: float
    qubit_frequency: float
    resonator_frequency: float
    resonator_anharmonicity: float
    fock_cutoff: int


def perturbative_chi(coupling, detuning, anharmonicity):

    """
        **Dispersive shift to lowest order, g^2 alpha / (Delta (Delta - alpha))**

        All arguments in the same angular or linear frequency unit; alpha is negative for a transmon.
    """

    return coupling ** 2 * anharmonicity / (detuning * (detuning - anharmonicity))


def _coupled_levels(qubit_diagonal, qubit_off, charges, resonator_hz, coupling_hz, fock):
    size = charges.size
    qubit = np.diag(qubit_diagonal) + np.diag(qubit_off, 1) + np.diag(qubit_off, -1)
    photons = np.arange(fock)
    ladder = np.diag(np.sqrt(photons[1:]), 1)

    hamiltonian = (np.kron(qubit, np.eye(fock)) +
                   np.kron(np.eye(size), np.diag(resonator_hz * photons)) +
                   coupling_hz * np.kron(np.diag(charges), ladder + ladder.T))

    count = min(4 * len(TRACKED_STATES), hamiltonian.shape[0])
    energies, vectors = scipy.linalg.eigh(hamiltonian, subset_by_index=(0, count - 1))

    _, bare_qubit = scipy.linalg.eigh_tridiagonal(qubit_diagonal, qubit_off, select='i', select_range=(0, 3))
    levels = {}
    for level, photon in TRACKED_STATES:
        bare = np.kron(bare_qubit[:, level], np.eye(fock)[photon])
        levels[level, photon] = energies[np.argmax(np.abs(bare @ vectors))]
    return levels


def dispersive_shift(qubit, resonator):

    """
        **Dispersive shift and dressed frequencies of a transmon coupled to a resonator**

        Diagonalizes 4 E_c (N - n_g)^2 - E_J cos(phi) + f_r a^dag a + (g / 2 pi) N (a + a^dag)
        in the charge times Fock product basis, working in Hz. Dressed states are identified by
        their largest overlap with bare product states. The Fock space is doubled until chi
        changes by less than 1 kHz.

        :param qubit: Transmon parameters
        :type qubit: TransmonParams
        :param resonator: Resonator parameters
        :type resonator: ResonatorParams
        :return: Dressed parameters
        :rtype: DispersiveParams
    """

    planck = PhysicalConstants.planck
    scaled = dataclasses.replace(qubit, josephson_energy=qubit.josephson_energy / planck,
                                 charging_energy=qubit.charging_energy / planck)
    qubit_diagonal, qubit_off = charge_basis_hamiltonian(scaled)
    charges = np.arange(-qubit.charge_cutoff, qubit.charge_cutoff + 1) - qubit.gate_charge
    coupling_hz = resonator.coupling / (2 * math.pi)

    bare = scipy.linalg.eigh_tridiagonal(qubit_diagonal, qubit_off, eigvals_only=True, select='i',
                                         select_range=(0, 1))
    detuning_hz = bare[1] - bare[0] - resonator.frequency
    if abs(coupling_hz) > DISPERSIVE_RATIO * abs(detuning_hz):
        warnings.warn('g / |Delta| = {:.3g} is outside the dispersive regime.'.format(
            abs(coupling_hz / detuning_hz)), exceptions.NonDispersiveWarning)

    fock = FOCK_START
    previous = None
    while fock <= FOCK_LIMIT:
        levels = _coupled_levels(qubit_diagonal, qubit_off, charges, resonator.frequency, coupling_hz, fock)
        chi_hz = (levels[0, 1] - levels[0, 0]) - (levels[1, 1] - levels[1, 0])
        logger.debug('Fock dimension %d: chi = %.6g Hz', fock, chi_hz)

        if previous is not None and abs(chi_hz - previous) < CHI_TOLERANCE:
            break
        previous = chi_hz
        fock *= 2
    else:
        raise exceptions.CutoffTooSmall('Dispersive shift did not converge up to Fock dimension {}.'.format(
            FOCK_LIMIT), FOCK_LIMIT)

    qubit_hz = levels[1, 0] - levels[0, 0]
    resonator_hz = levels[0, 1] - levels[0, 0]

    return DispersiveParams(
        chi=2 * math.pi * chi_hz,
        qubit_anharmonicity=2 * math.pi * abs((levels[2, 0] - levels[1, 0]) - qubit_hz),
        qubit_frequency=qubit_hz,
        resonator_frequency=resonator_hz,
        resonator_anharmonicity=2 * math.pi * ((levels[0, 2] - levels[0, 1]) - resonator_hz),
        fock_cutoff=fock,
    )
