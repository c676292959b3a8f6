import dataclasses

import numpy as np

from jjal import exceptions


ENGINEERING = 'engineering'
PHYSICS = 'physics'


@dataclasses.dataclass(frozen=True)
class ComplexTrace:

    """
        **Frequency-indexed complex reflection data**

        Values always use the engineering convention (time dependence e^{+j w t}, inductors
        have reactance +j w L). Data recorded in the physics convention is conjugated on
        construction through :meth:`from_physics` and keeps a note in ``metadata``.

        :param frequencies: Frequencies in Hz, strictly increasing
        :type frequencies: numpy.ndarray
        :param values: Complex reflection coefficients
        :type values: numpy.ndarray
        :param metadata: Free-form notes carried along with the trace
        :type metadata: dict
    """

    frequencies: np.ndarray
    values: np.ndarray
    metadata: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        frequencies = np.asarray(self.frequencies, dtype=float)
        values = np.asarray(self.values, dtype=complex)

        if frequencies.ndim != 1 or frequencies.shape != values.shape:
            raise exceptions.GridMismatch('Frequencies and values must be 1-d arrays of equal length.')
        if frequencies.size == 0:
            raise exceptions.EmptyGrid('Trace holds no points.')
        if np.any(np.diff(frequencies) <= 0):
            raise exceptions.InvalidGrid('Trace frequencies must be strictly increasing.')

        object.__setattr__(self, 'frequencies', frequencies)
        object.__setattr__(self, 'values', values)
        self.metadata.setdefault('convention', ENGINEERING)

    @classmethod
    def from_physics(cls, frequencies, values, metadata=None):
        metadata = dict(metadata or {})
        metadata['convention'] = ENGINEERING
        metadata['conjugated_from'] = PHYSICS
        return cls(frequencies, np.conj(np.asarray(values, dtype=complex)), metadata)

    def __len__(self):
        return self.frequencies.size

    def phase(self):

        """
            **Unwrapped phase of the trace in rad**
        """

        return np.unwrap(np.angle(self.values))

    def group_delay(self):

        """
            **Group delay -d(phase)/d(omega) in s**

            Positive at resonances for the engineering convention, where the phase of a
            lossless one-port decreases with frequency.
        """

        if len(self) < 3:
            raise exceptions.EmptyGrid('Group delay needs at least three points.')
        return -np.gradient(self.phase(), 2 * np.pi * self.frequencies)

    def window(self, f_start, f_stop):
        mask = (self.frequencies >= f_start) & (self.frequencies <= f_stop)
        return ComplexTrace(self.frequencies[mask], self.values[mask], dict(self.metadata))
