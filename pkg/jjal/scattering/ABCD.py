import logging

import numpy as np

from jjal import exceptions
from jjal.circuit.ArrayDesign import FluxBias, plasma_frequency, squid_inductance
from jjal.scattering.ComplexTrace import ComplexTrace


logger = logging.getLogger(__name__)

GRID_LIMIT = 1.2


class AbcdMatrix:

    """
        **Stack of 2x2 transmission (ABCD) matrices**

        Holds an array of shape (..., 2, 2), one matrix per frequency point. Cascading is the
        matrix product, taken with ``@``.

        :param matrices: Complex array of shape (..., 2, 2)
        :type matrices: numpy.ndarray
    """

    def __init__(self, matrices):
        self.matrices = np.asarray(matrices, dtype=complex)

    def __matmul__(self, other):
        return AbcdMatrix(np.matmul(self.matrices, other.matrices))

    def __pow__(self, exponent):
        return AbcdMatrix(np.linalg.matrix_power(self.matrices, exponent))

    def __repr__(self):
        return '<AbcdMatrix shape={}>'.format(self.matrices.shape[:-2])

    @property
    def a(self):
        return self.matrices[..., 0, 0]

    @property
    def b(self):
        return self.matrices[..., 0, 1]

    @property
    def c(self):
        return self.matrices[..., 1, 0]

    @property
    def d(self):
        return self.matrices[..., 1, 1]

    def determinant(self):
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls, size):
        return cls(np.broadcast_to(np.eye(2, dtype=complex), (size, 2, 2)).copy())

    @classmethod
    def series(cls, impedance):

        """
            **Series impedance element [[1, Z], [0, 1]]**
        """

        impedance = np.asarray(impedance, dtype=complex)
        matrices = np.zeros(impedance.shape + (2, 2), dtype=complex)
        matrices[..., 0, 0] = 1
        matrices[..., 0, 1] = impedance
        matrices[..., 1, 1] = 1
        return cls(matrices)

    @classmethod
    def shunt(cls, admittance):

        """
            **Shunt admittance element [[1, 0], [Y, 1]]**
        """

        admittance = np.asarray(admittance, dtype=complex)
        matrices = np.zeros(admittance.shape + (2, 2), dtype=complex)
        matrices[..., 0, 0] = 1
        matrices[..., 1, 0] = admittance
        matrices[..., 1, 1] = 1
        return cls(matrices)


def squid_impedance(omega, inductance, capacitance):
    with np.errstate(divide='ignore'):
        return 1.0 / (1.0 / (1j * omega * inductance) + 1j * omega * capacitance)


def array_cascade(design, flux, frequencies):

    """
        **Transmission matrix of the whole array**

        Each cell is T_LS T_SQ T_C0; N/2 cells, then T_C0' T_Cc T_C0', then N/2 cells.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :param frequencies: Frequencies in Hz
        :type frequencies: numpy.ndarray
        :return: One transmission matrix per frequency
        :rtype: AbcdMatrix
    """

    omega = 2 * np.pi * np.asarray(frequencies, dtype=float)
    inductance = squid_inductance(design.josephson_inductance, FluxBias.of(flux))

    cell = (AbcdMatrix.series(1j * omega * design.stray_inductance) @
            AbcdMatrix.series(squid_impedance(omega, inductance, design.josephson_capacitance)) @
            AbcdMatrix.shunt(1j * omega * design.island_capacitance))
    half = cell ** (design.n_squids // 2)

    center_shunt = AbcdMatrix.shunt(1j * omega * design.center_ground_capacitance)
    center = center_shunt @ AbcdMatrix.series(1.0 / (1j * omega * design.center_capacitance)) @ center_shunt

    return half @ center @ half


def abcd_reflection(matrix, port_impedance):

    """
        **Reflection of a two-port with a matched second port**

        :param matrix: Transmission matrices
        :type matrix: AbcdMatrix
        :param port_impedance: Port impedance Z0 in Ohm
        :type port_impedance: float
        :return: (A + B/Z0 - C Z0 - D) / (A + B/Z0 + C Z0 + D)
        :rtype: numpy.ndarray
    """

    z0 = port_impedance
    numerator = matrix.a + matrix.b / z0 - matrix.c * z0 - matrix.d
    denominator = matrix.a + matrix.b / z0 + matrix.c * z0 + matrix.d
    return numerator / denominator


def grounded_reflection(matrix, port_impedance):

    """
        **Reflection of a two-port whose second port is shorted to ground**

        The input impedance of the shorted network is Z_in = B / D.

        :param matrix: Transmission matrices
        :type matrix: AbcdMatrix
        :param port_impedance: Port impedance Z0 in Ohm
        :type port_impedance: float
        :return: (Z_in - Z0) / (Z_in + Z0)
        :rtype: numpy.ndarray
    """

    with np.errstate(divide='ignore', invalid='ignore'):
        impedance = matrix.b / matrix.d
        reflection = (impedance - port_impedance) / (impedance + port_impedance)
    # Open circuit at the input.
    return np.where(np.isfinite(impedance), reflection, 1.0 + 0j)


def check_grid(design, frequencies):
    frequencies = np.asarray(frequencies, dtype=float)

    if frequencies.size == 0:
        raise exceptions.EmptyGrid('Frequency grid is empty.')
    if np.any(np.diff(frequencies) <= 0):
        raise exceptions.InvalidGrid('Frequency grid must be strictly increasing.')
    if frequencies[0] <= 0:
        raise exceptions.InvalidGrid('Frequencies must be positive.')

    limit = GRID_LIMIT * plasma_frequency(design)
    if frequencies[-1] >= limit:
        raise exceptions.InvalidGrid('Frequency grid reaches {:.4g} GHz, above {} times the plasma frequency.'.format(
            frequencies[-1] / 1e9, GRID_LIMIT))

    return frequencies


def s11_sweep(design, flux, grid):

    """
        **Reflection coefficient of the array over a frequency grid**

        The far end of the array is grounded. The result is lossless, abs(S11) = 1.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :param grid: Frequencies in Hz, strictly increasing
        :type grid: numpy.ndarray
        :return: The reflection trace
        :rtype: ComplexTrace
    """

    frequencies = check_grid(design, grid)
    cascade = array_cascade(design, flux, frequencies)

    logger.debug('Swept S11 over %d points from %.4g to %.4g GHz', frequencies.size,
                 frequencies[0] / 1e9, frequencies[-1] / 1e9)

    return ComplexTrace(frequencies, grounded_reflection(cascade, design.port_impedance),
                        {'flux_phi0': FluxBias.of(flux).flux, 'termination': 'grounded'})
