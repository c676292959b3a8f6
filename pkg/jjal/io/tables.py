import csv
import dataclasses
import json
import logging
import math
import os

import numpy as np

from jjal import exceptions
from jjal import utils
from jjal.scattering.ComplexTrace import ComplexTrace


logger = logging.getLogger(__name__)


def _positive(value):
    return value > 0


def _non_negative(value):
    return value >= 0


def _any(value):
    return True


# Schema name -> ordered (column, check) pairs. Headers must match exactly.
SCHEMAS = {
    'trace': (('freq_hz', _positive), ('re', _any), ('im', _any)),
    'fluxmap': (('bias_current_a', _any), ('freq_hz', _positive)),
    'gain': (('freq_hz', _positive), ('gain_db', _any)),
    'psd': (('freq_hz', _positive), ('psd_dbm_hz', _any)),
    'stark': (('amp2', _non_negative), ('f_r_hz', _non_negative)),
    'ramsey': (('delay_s', _non_negative), ('signal', _any)),
    'jumps': (('t_s', _any), ('q', _any)),
    'iq': (('t_s', _any), ('i', _any), ('q', _any)),
}


@dataclasses.dataclass(frozen=True)
class Table:

    """
        **Typed columns read from a CSV file**

        :param schema: Schema name
        :type schema: str
        :param columns: Column arrays by header name
        :type columns: dict
        :param path: Source file
        :type path: str
        :param sha256: Content hash of the source file
        :type sha256: str
    """

    schema: str
    columns: dict
    path: str
    sha256: str

    def __getitem__(self, name):
        return self.columns[name]

    def __len__(self):
        return len(next(iter(self.columns.values())))

    def to_trace(self):
        return ComplexTrace(self['freq_hz'], self['re'] + 1j * self['im'], {'source': os.path.basename(self.path)})


def load_table(path, schema, min_rows=1):

    """
        **Read one CSV file with an exact header**

        :param path: Path of the CSV file
        :type path: str
        :param schema: Schema name, a key of ``SCHEMAS``
        :type schema: str
        :param min_rows: Fewest data rows the caller can work with
        :type min_rows: int
        :return: The typed table
        :rtype: Table
    """

    columns = SCHEMAS[schema]
    expected = [name for name, _ in columns]

    with open(path, newline='', encoding='utf-8') as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise exceptions.EmptyFile('{} is empty.'.format(path))

        header = [name.strip() for name in header]
        if header != expected:
            offending = next((name for name, want in zip(header, expected) if name != want), ','.join(header))
            raise exceptions.SchemaMismatch('{}: header {!r} does not match {!r}, offending column {!r}.'.format(
                path, ','.join(header), ','.join(expected), offending), offending)

        rows = []
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            line = reader.line_num
            if len(row) != len(expected):
                raise exceptions.UnitError('{}:{}: expected {} values, got {}.'.format(
                    path, line, len(expected), len(row)), line)
            values = []
            for cell, (name, check) in zip(row, columns):
                try:
                    value = float(cell)
                except ValueError:
                    raise exceptions.UnitError('{}:{}: cannot read {!r} as {}.'.format(path, line, cell, name), line)
                if not math.isfinite(value) or not check(value):
                    raise exceptions.UnitError('{}:{}: value {!r} is not valid for {}.'.format(
                        path, line, cell, name), line)
                values.append(value)
            rows.append(values)

    if not rows:
        raise exceptions.EmptyFile('{} holds no data rows.'.format(path))
    if len(rows) < min_rows:
        raise exceptions.InsufficientData('{} holds {} rows, {} are needed.'.format(path, len(rows), min_rows),
                                          len(rows), min_rows)

    data = np.array(rows)
    logger.debug('Read %d rows from %s', len(rows), path)
    return Table(schema, {name: data[:, index] for index, name in enumerate(expected)}, path,
                 utils.file_sha256(path))


def load_inputs(paths, expected_schema, min_rows=1):

    """
        **Read several CSV files of the same schema**

        :param paths: Paths of the CSV files
        :type paths: list
        :param expected_schema: Schema name
        :type expected_schema: str
        :param min_rows: Fewest data rows per file
        :type min_rows: int
        :return: One table per path
        :rtype: list
    """

    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    return [load_table(path, expected_schema, min_rows) for path in paths]


def format_value(value):
    if isinstance(value, (int, np.integer, bool, np.bool_, str)):
        return str(value)
    return repr(float(value))


def write_table(path, header, rows):

    """
        **Write a CSV table with a unit-suffixed header**

        Floats are written with their shortest round-trip representation.

        :param path: Output path
        :type path: str
        :param header: Column names
        :type header: list
        :param rows: Rows of values
        :type rows: iterable
    """

    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    logger.info('Wrote %s', path)


POPULATION_KEYS = ('populations', 'energies_ghz')


def _numbers(path, key, values):
    if not isinstance(values, list) or not values:
        raise exceptions.SchemaMismatch('{}: {!r} must be a non-empty list of numbers.'.format(path, key), key)
    numbers = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise exceptions.UnitError('{}: cannot read {!r} in {!r} as a number.'.format(path, value, key), None)
        numbers.append(float(value))
    return numbers


def load_populations(path):

    """
        **Read level populations from a JSON file**

        The file holds either a list of populations, ground state first, or an object with a
        ``populations`` list and an optional ``energies_ghz`` list of the same length.

        :param path: Path of the JSON file
        :type path: str
        :return: Populations and level energies in GHz, or None when the file gives none
        :rtype: tuple
    """

    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    if not text.strip():
        raise exceptions.EmptyFile('{} is empty.'.format(path))

    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise exceptions.SchemaMismatch('{}: not valid JSON ({}).'.format(path, error.msg), 'populations')

    if isinstance(document, list):
        document = {'populations': document}
    if not isinstance(document, dict):
        raise exceptions.SchemaMismatch('{}: expected a list or an object.'.format(path), 'populations')

    unknown = sorted(set(document) - set(POPULATION_KEYS))
    if unknown:
        raise exceptions.SchemaMismatch('{}: unknown key {!r}, expected {}.'.format(
            path, unknown[0], ', '.join(POPULATION_KEYS)), unknown[0])
    if 'populations' not in document:
        raise exceptions.SchemaMismatch('{}: missing key \'populations\'.'.format(path), 'populations')

    populations = _numbers(path, 'populations', document['populations'])
    energies = None
    if 'energies_ghz' in document:
        energies = _numbers(path, 'energies_ghz', document['energies_ghz'])
        if len(energies) != len(populations):
            raise exceptions.SchemaMismatch('{}: {} energies for {} populations.'.format(
                path, len(energies), len(populations)), 'energies_ghz')

    logger.debug('Read %d populations from %s', len(populations), path)
    return populations, energies
