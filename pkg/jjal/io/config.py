import logging
import sys

from jjal import exceptions
from jjal import utils
from jjal.circuit.ArrayDesign import ArrayDesign

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


logger = logging.getLogger(__name__)

# Design file key -> (ArrayDesign field, factor to SI, required).
DESIGN_KEYS = {
    'n_squids': ('n_squids', None, True),
    'ic_uA': ('critical_current', utils.MICROAMPERE, True),
    'cj_fF': ('josephson_capacitance', utils.FEMTOFARAD, True),
    'c0_fF': ('island_capacitance', utils.FEMTOFARAD, True),
    'cc_fF': ('center_capacitance', utils.FEMTOFARAD, True),
    'c0p_fF': ('center_ground_capacitance', utils.FEMTOFARAD, True),
    'lstray_pH': ('stray_inductance', utils.PICOHENRY, False),
    'z0_ohm': ('port_impedance', 1.0, False),
    'asymmetry_m': ('asymmetry', 1.0, False),
}


def parse_design(values, source='<design>'):

    """
        **Build a design from design file key/value pairs**

        :param values: Keys and values as read from the design file
        :type values: dict
        :param source: Name used in error messages
        :type source: str
        :return: The design
        :rtype: ArrayDesign
    """

    unknown = sorted(set(values) - set(DESIGN_KEYS))
    if unknown:
        raise exceptions.ConfigError('Unknown key {!r} in {}.'.format(unknown[0], source), unknown[0])

    fields = {}
    for key, (field, factor, required) in DESIGN_KEYS.items():
        if key not in values:
            if required:
                raise exceptions.ConfigError('Missing key {!r} in {}.'.format(key, source), key)
            continue

        value = values[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise exceptions.ConfigError('Key {!r} in {} must be a number, got {!r}.'.format(key, source, value), key)
        if factor is None and not isinstance(value, int):
            raise exceptions.ConfigError('Key {!r} in {} must be an integer.'.format(key, source), key)

        fields[field] = value if factor is None else float(value) * factor

    return ArrayDesign(**fields)


def load_design(path):

    """
        **Read a TOML design file**

        :param path: Path of the design file
        :type path: str
        :return: The design
        :rtype: ArrayDesign
    """

    try:
        with open(path, 'rb') as handle:
            values = tomllib.load(handle)
    except FileNotFoundError:
        raise exceptions.ConfigError('Design file {} does not exist.'.format(path), 'design')
    except tomllib.TOMLDecodeError as e:
        raise exceptions.ConfigError('Design file {} is not valid TOML: {}'.format(path, e), 'design')

    logger.debug('Loaded design file %s', path)
    return parse_design(values, path)
