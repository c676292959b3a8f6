import dataclasses
import logging
import math
import os

from jjal import exceptions
from jjal.circuit.PhysicalConstants import PhysicalConstants


logger = logging.getLogger(__name__)

FRUSTRATION_THRESHOLD = 1e-9
SAMPLES_DIRECTORY = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'samples')


@dataclasses.dataclass(frozen=True)
class FluxBias:

    """
        **External flux bias of the SQUIDs**

        :param flux: Flux per SQUID loop in units of the flux quantum
        :type flux: float
    """

    flux: float = 0.0

    @classmethod
    def of(cls, value):
        if isinstance(value, FluxBias):
            return value
        return cls(float(value))


@dataclasses.dataclass(frozen=True)
class ArrayDesign:

    """
        **Circuit parameters of a dimerized SQUID array**

        All fields are in SI units. The center capacitor sits between islands N/2 and N/2+1,
        so the number of SQUIDs must be even.

        :param n_squids: Number of SQUIDs (and islands) in the array
        :type n_squids: int
        :param critical_current: Zero-field critical current per SQUID in A
        :type critical_current: float
        :param josephson_capacitance: SQUID capacitance C_J in F
        :type josephson_capacitance: float
        :param island_capacitance: Island capacitance to ground C_0 in F
        :type island_capacitance: float
        :param center_capacitance: Center coupling capacitance C_c in F
        :type center_capacitance: float
        :param center_ground_capacitance: Capacitance to ground of the two center islands C_0' in F
        :type center_ground_capacitance: float
        :param stray_inductance: Stray inductance per cell in H
        :type stray_inductance: float
        :param port_impedance: Port impedance Z_0 in Ohm
        :type port_impedance: float
        :param asymmetry: Resistance asymmetry between the two array halves, metadata only
        :type asymmetry: float
    """

    n_squids: int
    critical_current: float
    josephson_capacitance: float
    island_capacitance: float
    center_capacitance: float
    center_ground_capacitance: float
    stray_inductance: float = 0.0
    port_impedance: float = 50.0
    asymmetry: float = None

    def __post_init__(self):
        if isinstance(self.n_squids, bool) or int(self.n_squids) != self.n_squids:
            raise exceptions.InvalidDesign('n_squids must be an integer, got {!r}.'.format(self.n_squids), 'n_squids')
        if self.n_squids < 2 or self.n_squids % 2:
            raise exceptions.InvalidDesign('n_squids must be even and at least 2, got {}.'.format(self.n_squids),
                                           'n_squids')

        for field in ('critical_current', 'josephson_capacitance', 'island_capacitance',
                      'center_capacitance', 'center_ground_capacitance', 'port_impedance'):
            value = getattr(self, field)
            if not (math.isfinite(value) and value > 0):
                raise exceptions.InvalidDesign('{} must be strictly positive, got {!r}.'.format(field, value), field)

        if not (math.isfinite(self.stray_inductance) and self.stray_inductance >= 0):
            raise exceptions.InvalidDesign('stray_inductance must be non-negative, got {!r}.'.format(
                self.stray_inductance), 'stray_inductance')

    @property
    def josephson_energy(self):
        return PhysicalConstants.flux_quantum * self.critical_current / (2 * math.pi)

    @property
    def josephson_inductance(self):

        """
            **Zero-field Josephson inductance L_J(0) of one SQUID in H**
        """

        return PhysicalConstants.flux_quantum / (2 * math.pi * self.critical_current)

    def participation_ratio(self, flux=0.0):

        """
            **Josephson inductance participation ratio**

            Fraction of the cell inductance carried by the flux-tunable SQUID,
            gamma_L = L_J / (L_J + L_stray).

            :param flux: Flux bias in units of the flux quantum
            :type flux: float or FluxBias
            :return: Participation ratio in (0, 1]
            :rtype: float
        """

        inductance = squid_inductance(self.josephson_inductance, flux)
        return inductance / (inductance + self.stray_inductance)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_file(cls, path):

        """
            **Load a design from a TOML design file**

            :param path: Path of the design file
            :type path: str
            :return: The design
            :rtype: ArrayDesign
        """

        from jjal.io import config
        return config.load_design(path)

    @classmethod
    def from_sample(cls, name):

        """
            **Load one of the bundled sample designs**

            :param name: Sample name, one of ``sample_i``, ``sample_ii`` or ``sample_iii``
            :type name: str
            :return: The design
            :rtype: ArrayDesign
        """

        path = os.path.join(SAMPLES_DIRECTORY, '{}.toml'.format(name.lower()))
        if not os.path.isfile(path):
            raise exceptions.ConfigError('Unknown sample design {!r}.'.format(name), 'sample')
        return cls.from_file(path)


def squid_inductance(josephson_inductance, flux):

    """
        **Flux-tuned inductance of a symmetric DC-SQUID**

        :param josephson_inductance: Zero-field inductance L_J0 in H
        :type josephson_inductance: float
        :param flux: Flux bias in units of the flux quantum
        :type flux: float or FluxBias
        :return: L_J0 / abs(cos(pi * flux)) in H
        :rtype: float
    """

    phi = FluxBias.of(flux).flux
    cosine = abs(math.cos(math.pi * math.remainder(phi, 1.0)))

    if cosine <= FRUSTRATION_THRESHOLD:
        raise exceptions.FrustrationSingularity(
            'SQUID is fully frustrated at flux {} (|cos| = {:.3g}).'.format(phi, cosine), phi)

    return josephson_inductance / cosine


def plasma_frequency(design):

    """
        **Plasma frequency of a single SQUID in Hz**

        :param design: The array design
        :type design: ArrayDesign
        :return: 1 / (2 pi sqrt(L_J(0) C_J))
        :rtype: float
    """

    return 1.0 / (2 * math.pi * math.sqrt(design.josephson_inductance * design.josephson_capacitance))
