import hashlib
import logging
import os

import numpy as np

from jjal import exceptions


logger = logging.getLogger(__name__)

# Unit factors from the command line units to SI.
GHZ = 1e9
MHZ = 1e6
KHZ = 1e3
FEMTOFARAD = 1e-15
PICOHENRY = 1e-12
MICROAMPERE = 1e-6
NANOSECOND = 1e-9
MICROSECOND = 1e-6


def dbm_to_watt(power_dbm):

    """
        **Convert a power in dBm to watts**

        :param power_dbm: Power in dBm, ``-inf`` maps to zero
        :type power_dbm: float or numpy.ndarray
        :return: Power in W
        :rtype: float or numpy.ndarray
    """

    return 10.0 ** ((power_dbm - 30.0) / 10.0)


def db_to_power(gain_db):
    return 10.0 ** (gain_db / 10.0)


def power_to_db(gain):
    return 10.0 * np.log10(gain)


def file_sha256(path):

    """
        **Hash a file**

        Content hash recorded in the provenance block of result documents.

        :param path: Path of the file to hash
        :type path: str
        :return: Hex digest of the SHA-256 hash
        :rtype: str
    """

    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


def worker_count(requested=None):

    """
        **Number of worker threads for sweeps**

        The ``JJAL_THREADS`` environment variable caps the count, otherwise the CPU count is used.

        :param requested: Explicit worker count, overrides the environment
        :type requested: int
        :return: Worker count, at least one
        :rtype: int
    """

    if requested is not None:
        if requested < 1:
            raise exceptions.ConfigError('Worker count must be at least 1, got {}.'.format(requested), 'workers')
        return requested

    value = os.environ.get('JJAL_THREADS')
    if value is None:
        return os.cpu_count() or 1

    try:
        count = int(value)
    except ValueError:
        raise exceptions.ConfigError('JJAL_THREADS must be an integer, got {!r}.'.format(value), 'JJAL_THREADS')

    if count < 1:
        raise exceptions.ConfigError('JJAL_THREADS must be at least 1, got {}.'.format(count), 'JJAL_THREADS')

    logger.debug('Using %d worker threads from JJAL_THREADS', count)
    return count
