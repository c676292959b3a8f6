import dataclasses
import json
import logging
import math
import os

import numpy as np

from jjal import exceptions
from jjal import utils


logger = logging.getLogger(__name__)


def _plain(value):
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_plain(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no inf or nan.
        return value if math.isfinite(value) else repr(value)
    if value is None or isinstance(value, str):
        return value
    if dataclasses.is_dataclass(value):
        return _plain(dataclasses.asdict(value))
    return str(value)


def build_provenance(input_paths, seed, version=None):

    """
        **Provenance block of a result document**

        :param input_paths: Input files, hashed by content
        :type input_paths: list
        :param seed: Seed of the synthetic generators
        :type seed: int
        :param version: Tool version, the package version when omitted
        :type version: str
        :rtype: dict
    """

    if version is None:
        from jjal import __version__ as version

    return {
        'tool_version': version,
        'seed': seed,
        'inputs': {os.path.basename(path): utils.file_sha256(path) for path in input_paths},
    }


@dataclasses.dataclass
class ResultDocument:

    """
        **JSON document written by every pipeline run**

        :param command: Echo of the verb and its options
        :type command: dict
        :param provenance: Tool version, seed and input hashes
        :type provenance: dict
        :param payload: Fitted parameters, summaries and the names of written tables
        :type payload: dict
    """

    command: dict
    provenance: dict
    payload: dict = dataclasses.field(default_factory=dict)

    def as_dict(self):
        return {'command': _plain(self.command), 'provenance': _plain(self.provenance),
                'payload': _plain(self.payload)}

    def to_json(self):

        """
            **Serialize with sorted keys and no timestamps**

            :rtype: str
        """

        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + '\n'

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
            return cls(data['command'], data['provenance'], data['payload'])
        except (ValueError, KeyError, TypeError) as e:
            raise exceptions.SchemaMismatch('Not a result document: {}'.format(e), 'document')

    def write(self, path):
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(self.to_json())
        logger.info('Wrote %s', path)

    @classmethod
    def read(cls, path):
        with open(path, encoding='utf-8') as handle:
            return cls.from_json(handle.read())
