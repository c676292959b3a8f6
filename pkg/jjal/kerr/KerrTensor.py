import dataclasses
import logging
import math

import numpy as np

from jjal import exceptions
from jjal.circuit.PhysicalConstants import PhysicalConstants
from jjal.modes.ModeSpectrum import inverse_sqrt_spd, mirror_overlap


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class KerrTensor:

    """
        **Self- and cross-Kerr coefficients of the retained modes**

        Coefficients are given in Hz (K / 2 pi). The diagonal of ``cross_kerr`` is the
        cross-Kerr formula evaluated at k = m, which is twice the self-Kerr coefficient.

        :param self_kerr: Self-Kerr coefficients K_mm / 2 pi in Hz
        :type self_kerr: numpy.ndarray
        :param cross_kerr: Cross-Kerr coefficients K_mk / 2 pi in Hz
        :type cross_kerr: numpy.ndarray
        :param eta_factors: Dimensionless factors eta_mmkk
        :type eta_factors: numpy.ndarray
        :param retained_mode_count: Number of retained modes
        :type retained_mode_count: int
        :param mirror_parity: Mirror classification of the retained modes before symmetrization
        :type mirror_parity: numpy.ndarray
    """

    self_kerr: np.ndarray
    cross_kerr: np.ndarray
    eta_factors: np.ndarray
    retained_mode_count: int
    mirror_parity: np.ndarray

    @property
    def self_kerr_angular(self):
        return 2 * math.pi * self.self_kerr

    @property
    def cross_kerr_angular(self):
        return 2 * math.pi * self.cross_kerr

    def neighbour_cross_kerr(self):

        """
            **Cross-Kerr coefficients K_m,m+1 in Hz**
        """

        return np.diag(self.cross_kerr, 1).copy()


def symmetrize_modes(spectrum):

    """
        **Symmetrize the mirror-antisymmetric eigenvectors**

        Flips the sign of the far half (islands N/2+1 ... N) of every eigenvector whose
        overlap with its mirror image is negative. Frequencies are unchanged.

        :param spectrum: The mode spectrum
        :type spectrum: ModeSpectrum
        :return: Spectrum with mirror-symmetric eigenvectors
        :rtype: ModeSpectrum
    """

    vectors = spectrum.eigenvectors.copy()
    antisymmetric = mirror_overlap(vectors) < 0
    vectors[spectrum.mode_count // 2:, antisymmetric] *= -1

    logger.debug('Symmetrized %d of %d modes', int(np.count_nonzero(antisymmetric)), spectrum.mode_count)

    return spectrum.replace(
        eigenvectors=vectors,
        node_flux_vectors=spectrum.inverse_sqrt_capacitance @ vectors,
        symmetrized=True,
    )


def bond_flux_drops(spectrum, modes=None, inverse_sqrt_capacitance=None):

    """
        **Flux drops D Psi across the N+1 bonds, scaled by sqrt(C_J)**

        The grounded boundary nodes contribute zero rows.

        :param spectrum: The mode spectrum
        :type spectrum: ModeSpectrum
        :param modes: Mode indices to evaluate, all when omitted
        :type modes: list
        :param inverse_sqrt_capacitance: C^(-1/2) to use instead of the one stored with the spectrum
        :type inverse_sqrt_capacitance: numpy.ndarray
        :return: Array of shape (N+1, len(modes))
        :rtype: numpy.ndarray
    """

    columns = slice(None) if modes is None else list(modes)
    if inverse_sqrt_capacitance is None:
        node_flux = spectrum.node_flux_vectors[:, columns]
    else:
        node_flux = inverse_sqrt_capacitance @ spectrum.eigenvectors[:, columns]

    padded = np.pad(node_flux, ((1, 1), (0, 0)))
    return math.sqrt(spectrum.design.josephson_capacitance) * np.diff(padded, axis=0)


def eta_factor(spectrum, capacitance, m, k):

    """
        **Dimensionless overlap factor eta_mmkk**

        :param spectrum: Symmetrized mode spectrum
        :type spectrum: ModeSpectrum
        :param capacitance: Capacitance matrix, the stored C^(-1/2) is reused when None
        :type capacitance: numpy.ndarray
        :param m: First mode index
        :type m: int
        :param k: Second mode index
        :type k: int
        :return: sum over bonds of (D Psi_m)^2 (D Psi_k)^2
        :rtype: float
    """

    for index in (m, k):
        if not 0 <= index < spectrum.mode_count:
            raise exceptions.IndexOutOfRange(
                'Mode index {} outside 0..{}.'.format(index, spectrum.mode_count - 1), index)

    inv_sqrt = None if capacitance is None else inverse_sqrt_spd(capacitance)
    drops = bond_flux_drops(spectrum, [m, k], inv_sqrt)
    return float(np.sum(drops[:, 0] ** 2 * drops[:, 1] ** 2))


def kerr_coefficients(design, spectrum, retained):

    """
        **Self- and cross-Kerr coefficients of the lowest modes**

        K_mm = 2 hbar pi^4 E_J eta_mmmm / (Phi_0^4 C_J^2 w_m^2) and
        K_mk = 4 hbar pi^4 E_J eta_mmkk / (Phi_0^4 C_J^2 w_m w_k). Unsymmetrized spectra are
        symmetrized first.

        :param design: The array design, supplies E_J and C_J
        :type design: ArrayDesign
        :param spectrum: The mode spectrum
        :type spectrum: ModeSpectrum
        :param retained: Number of lowest modes to keep
        :type retained: int
        :return: The Kerr coefficients
        :rtype: KerrTensor
    """

    if not 0 < retained <= spectrum.mode_count:
        raise exceptions.IndexOutOfRange(
            'Retained mode count {} outside 1..{}.'.format(retained, spectrum.mode_count), retained)

    parity = spectrum.mirror_parity[:retained].copy()
    if not spectrum.symmetrized:
        spectrum = symmetrize_modes(spectrum)

    drops = bond_flux_drops(spectrum, range(retained))
    squared = drops ** 2
    eta = squared.T @ squared
    eta = 0.5 * (eta + eta.T)

    constants = PhysicalConstants
    prefactor = (4 * constants.reduced_planck * math.pi ** 4 * design.josephson_energy /
                 (constants.flux_quantum ** 4 * design.josephson_capacitance ** 2))

    omega = spectrum.frequencies[:retained]
    cross = prefactor * eta / np.outer(omega, omega) / (2 * math.pi)

    logger.debug('Computed Kerr coefficients of %d modes', retained)

    return KerrTensor(
        self_kerr=0.5 * np.diag(cross).copy(),
        cross_kerr=cross,
        eta_factors=eta,
        retained_mode_count=retained,
        mirror_parity=parity,
    )
