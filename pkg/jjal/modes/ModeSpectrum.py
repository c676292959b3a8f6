import concurrent.futures
import dataclasses
import logging
import math

import numpy as np
import scipy.linalg

from jjal import exceptions
from jjal import utils
from jjal.circuit.ArrayDesign import ArrayDesign, FluxBias
from jjal.circuit.Ladder import build_ladder_matrices


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ModeSpectrum:

    """
        **Eigenmodes of the ladder at one flux bias**

        :param frequencies: Angular eigenfrequencies in rad/s, ascending
        :type frequencies: numpy.ndarray
        :param eigenvectors: Orthonormal eigenvectors Psi as columns
        :type eigenvectors: numpy.ndarray
        :param node_flux_vectors: Node flux vectors Phi = C^(-1/2) Psi as columns
        :type node_flux_vectors: numpy.ndarray
        :param inverse_sqrt_capacitance: C^(-1/2) of the capacitance matrix
        :type inverse_sqrt_capacitance: numpy.ndarray
        :param mirror_parity: +1 for mirror-symmetric and -1 for mirror-antisymmetric modes
        :type mirror_parity: numpy.ndarray
        :param design: Design the spectrum was computed for
        :type design: ArrayDesign
        :param flux: Flux bias the spectrum was computed at
        :type flux: FluxBias
        :param symmetrized: Whether antisymmetric eigenvectors were sign-flipped on the far half
        :type symmetrized: bool
    """

    frequencies: np.ndarray
    eigenvectors: np.ndarray
    node_flux_vectors: np.ndarray
    inverse_sqrt_capacitance: np.ndarray
    mirror_parity: np.ndarray
    design: ArrayDesign
    flux: FluxBias
    symmetrized: bool = False

    @property
    def frequencies_hz(self):
        return self.frequencies / (2 * np.pi)

    @property
    def mode_count(self):
        return len(self.frequencies)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class DimerRecord:

    """
        **A pair of hybridized neighbouring modes**

        :param dimer_index: Index of the dimer, counted from the lowest frequency
        :type dimer_index: int
        :param lower_frequency: Angular frequency of the lower mode in rad/s
        :type lower_frequency: float
        :param upper_frequency: Angular frequency of the upper mode in rad/s
        :type upper_frequency: float
        :param half_splitting: J_n = (upper - lower) / 2 in rad/s
        :type half_splitting: float
        :param mode_indices: Indices of the two modes in the sorted spectrum
        :type mode_indices: tuple
    """

    dimer_index: int
    lower_frequency: float
    upper_frequency: float
    half_splitting: float
    mode_indices: tuple

    @property
    def splitting_hz(self):
        return 2 * self.half_splitting / (2 * math.pi)


def inverse_sqrt_spd(matrix):

    """
        **Inverse square root of a symmetric positive definite matrix**

        :param matrix: Symmetric positive definite matrix
        :type matrix: numpy.ndarray
        :return: Symmetric M with M A M = 1
        :rtype: numpy.ndarray
    """

    matrix = np.asarray(matrix, dtype=float)
    values, vectors = scipy.linalg.eigh(matrix)

    if values[0] <= 0:
        raise exceptions.NotPositiveDefinite(
            'Matrix is not positive definite, smallest eigenvalue {:.3g}.'.format(values[0]), values[0])

    root = (vectors / np.sqrt(values)) @ vectors.T
    return 0.5 * (root + root.T)


def mirror_overlap(vectors):

    """
        **Overlap of each column with its mirror image j -> N+1-j**

        :param vectors: Vectors as columns
        :type vectors: numpy.ndarray
        :return: Normalized overlaps in [-1, 1]
        :rtype: numpy.ndarray
    """

    norms = np.einsum('ij,ij->j', vectors, vectors)
    return np.einsum('ij,ij->j', vectors, vectors[::-1]) / norms


def solve_modes(design, flux=0.0, matrices=None):

    """
        **Solve the dispersion relation of the array**

        Diagonalizes C^(-1/2) L^-1 C^(-1/2). The entry of largest magnitude of each eigenvector is made positive.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :param matrices: Precomputed ladder matrices, built from the design when omitted
        :type matrices: LadderMatrices
        :return: The mode spectrum
        :rtype: ModeSpectrum
    """

    flux = FluxBias.of(flux)
    if matrices is None:
        matrices = build_ladder_matrices(design, flux)

    inv_sqrt = inverse_sqrt_spd(matrices.capacitance)
    dynamical = inv_sqrt @ matrices.inverse_inductance @ inv_sqrt
    dynamical = 0.5 * (dynamical + dynamical.T)

    values, vectors = scipy.linalg.eigh(dynamical)
    frequencies = np.sqrt(np.clip(values, 0.0, None))

    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    vectors = vectors * signs

    parity = np.where(mirror_overlap(vectors) >= 0, 1, -1)

    logger.debug('Solved %d modes at flux %g, highest %.4g GHz', len(frequencies), flux.flux,
                 frequencies[-1] / (2 * np.pi * 1e9))

    return ModeSpectrum(
        frequencies=frequencies,
        eigenvectors=vectors,
        node_flux_vectors=inv_sqrt @ vectors,
        inverse_sqrt_capacitance=inv_sqrt,
        mirror_parity=parity,
        design=design,
        flux=flux,
    )


def pair_dimers(spectrum, f_max):

    """
        **Group consecutive modes below a cut-off into dimers**

        :param spectrum: The mode spectrum
        :type spectrum: ModeSpectrum
        :param f_max: Cut-off frequency in Hz
        :type f_max: float
        :return: Dimers (0, 1), (2, 3), ... below the cut-off
        :rtype: list
    """

    below = np.flatnonzero(spectrum.frequencies_hz < f_max)

    if len(below) % 2:
        raise exceptions.OddModeCount(
            '{} modes lie below {:.4g} GHz, the highest one has no partner.'.format(len(below), f_max / 1e9),
            len(below))

    dimers = []
    for n in range(len(below) // 2):
        lower, upper = spectrum.frequencies[2 * n], spectrum.frequencies[2 * n + 1]
        dimers.append(DimerRecord(
            dimer_index=n,
            lower_frequency=float(lower),
            upper_frequency=float(upper),
            half_splitting=float(upper - lower) / 2,
            mode_indices=(2 * n, 2 * n + 1),
        ))

    return dimers


def sweep_flux(design, fluxes, workers=None):

    """
        **Solve the spectrum for several flux points**

        Points are solved independently on a thread pool; results keep the order of ``fluxes``.

        :param design: The array design
        :type design: ArrayDesign
        :param fluxes: Flux points in units of the flux quantum
        :type fluxes: list
        :param workers: Worker count, ``JJAL_THREADS`` or the CPU count when omitted
        :type workers: int
        :return: One spectrum per flux point
        :rtype: list
    """

    fluxes = [FluxBias.of(flux) for flux in fluxes]
    workers = min(utils.worker_count(workers), max(len(fluxes), 1))

    logger.info('Sweeping %d flux points on %d workers', len(fluxes), workers)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda flux: solve_modes(design, flux), fluxes))
