import dataclasses
import logging

import numpy as np

from jjal.circuit.ArrayDesign import FluxBias, squid_inductance


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class LadderMatrices:

    """
        **Capacitance and inverse inductance matrices of the ladder**

        Islands 1..N map to rows 0..N-1, the center bond lies between rows N/2-1 and N/2.

        :param capacitance: Capacitance matrix in F
        :type capacitance: numpy.ndarray
        :param inverse_inductance: Inverse inductance matrix in 1/H
        :type inverse_inductance: numpy.ndarray
        :param josephson_inductance: Flux-tuned SQUID inductance used for the matrices, in H
        :type josephson_inductance: float
    """

    capacitance: np.ndarray
    inverse_inductance: np.ndarray
    josephson_inductance: float

    @property
    def size(self):
        return self.capacitance.shape[0]


def _tridiagonal(diagonal, off_diagonal):
    return np.diag(diagonal) + np.diag(off_diagonal, 1) + np.diag(off_diagonal, -1)


def build_ladder_matrices(design, flux=0.0, uniform=False):

    """
        **Build the ladder matrices of a design**

        Stray inductance is not part of the linear model and is left out here.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :param uniform: Replace the center bond by a bulk bond (textbook uniform chain)
        :type uniform: bool
        :return: The capacitance and inverse inductance matrices
        :rtype: LadderMatrices
    """

    n = design.n_squids
    center = n // 2
    inductance = squid_inductance(design.josephson_inductance, FluxBias.of(flux))
    c_j = design.josephson_capacitance

    c_diagonal = np.full(n, 2 * c_j + design.island_capacitance)
    c_off = np.full(n - 1, -c_j)
    l_diagonal = np.full(n, 2 / inductance)
    l_off = np.full(n - 1, -1 / inductance)

    if not uniform:
        c_diagonal[center - 1:center + 1] = c_j + design.center_capacitance + design.center_ground_capacitance
        c_off[center - 1] = -design.center_capacitance
        l_diagonal[center - 1:center + 1] = 1 / inductance
        l_off[center - 1] = 0.0

    logger.debug('Built %dx%d ladder matrices at L_J = %.4g H', n, n, inductance)

    return LadderMatrices(
        capacitance=_tridiagonal(c_diagonal, c_off),
        inverse_inductance=_tridiagonal(l_diagonal, l_off),
        josephson_inductance=inductance,
    )


def _stamp(matrix, first, second, value):
    for row, column, sign in ((first, first, 1), (second, second, 1), (first, second, -1), (second, first, -1)):
        if row is not None and column is not None:
            matrix[row, column] += sign * value


def build_cascade_matrices(design, flux=0.0):

    """
        **Node matrices of the circuit the transmission matrix cascade describes**

        Same element order as the cascade: each cell is the stray inductor, the SQUID and the
        island capacitance, N/2 cells on each side of C0' Cc C0'. Both ports are grounded, so the
        eigenfrequencies are the zeros of the cascade's B entry. With stray inductance every cell
        gets a node between the stray inductor and the SQUID and the model has 2N nodes.

        :param design: The array design
        :type design: ArrayDesign
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :return: The capacitance and inverse inductance matrices
        :rtype: LadderMatrices
    """

    n = design.n_squids
    inductance = squid_inductance(design.josephson_inductance, FluxBias.of(flux))
    with_stray = design.stray_inductance > 0

    # (node, node, value), None is ground.
    capacitors = []
    inductors = []
    nodes = 0
    previous = None

    for cell in range(n):
        if cell == n // 2:
            capacitors.append((previous, None, design.center_ground_capacitance))
            capacitors.append((previous, nodes, design.center_capacitance))
            capacitors.append((nodes, None, design.center_ground_capacitance))
            previous, nodes = nodes, nodes + 1

        middle = previous
        if with_stray:
            middle, nodes = nodes, nodes + 1
            inductors.append((previous, middle, design.stray_inductance))

        # The last island is the grounded far end.
        island = None
        if cell < n - 1:
            island, nodes = nodes, nodes + 1
            capacitors.append((island, None, design.island_capacitance))
        inductors.append((middle, island, inductance))
        capacitors.append((middle, island, design.josephson_capacitance))
        previous = island

    capacitance = np.zeros((nodes, nodes))
    inverse_inductance = np.zeros((nodes, nodes))
    for first, second, value in capacitors:
        _stamp(capacitance, first, second, value)
    for first, second, value in inductors:
        _stamp(inverse_inductance, first, second, 1 / value)

    logger.debug('Built %d-node cascade matrices at L_J = %.4g H', nodes, inductance)

    return LadderMatrices(
        capacitance=capacitance,
        inverse_inductance=inverse_inductance,
        josephson_inductance=inductance,
    )
