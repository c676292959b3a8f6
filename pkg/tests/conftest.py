import numpy as np
import pytest

from jjal.circuit.ArrayDesign import ArrayDesign
from jjal.modes.ModeSpectrum import solve_modes


# Eigenfrequencies (GHz), self-Kerr and neighbour cross-Kerr (10^3 rad/s) of the first twelve modes.
REFERENCE_MODES = {
    'sample_i': (
        (2.061, 2.478, 6.427, 7.106, 10.398, 10.881, 13.364, 13.646),
        (1.1, 1.8, 12.7, 15.3, 34.9, 37.3, 58.3, 59.8),
        (2.8, 6.1, 26.9, 29.7, 69.8, 59.6, 115.3, 87.2),
    ),
    'sample_ii': (
        (1.113, 1.345, 3.488, 3.927, 5.828, 6.210, 7.819, 8.090, 9.381, 9.560, 10.561, 10.677),
        (0.5, 0.8, 5.6, 7.1, 16.4, 18.2, 30.0, 31.4, 43.3, 44.3, 55.0, 55.7),
        (1.2, 2.7, 11.9, 13.7, 32.8, 29.4, 58.7, 46.5, 84.7, 62.4, 107.8, 76.1),
    ),
    'sample_iii': (
        (0.863, 1.039, 2.696, 3.050, 4.538, 4.873, 6.177, 6.434, 7.528, 7.710, 8.598, 8.724),
        (0.3, 0.6, 3.8, 5.0, 11.5, 12.9, 21.5, 22.8, 32.1, 33.1, 42.0, 42.7),
        (0.9, 1.9, 8.2, 9.5, 22.8, 20.9, 41.9, 33.9, 62.4, 46.8, 81.8, 58.5),
    ),
}


def small_design(n_squids=8, **changes):
    values = dict(
        n_squids=n_squids,
        critical_current=6e-6,
        josephson_capacitance=50e-15,
        island_capacitance=20e-15,
        center_capacitance=2e-15,
        center_ground_capacitance=20e-15,
    )
    values.update(changes)
    return ArrayDesign(**values)


@pytest.fixture
def design8():
    return small_design(8)


@pytest.fixture(scope='session')
def sample_spectra():
    cache = {}

    def spectrum(name):
        if name not in cache:
            design = ArrayDesign.from_sample(name)
            cache[name] = (design, solve_modes(design))
        return cache[name]

    return spectrum


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
