import dataclasses
import itertools
import logging

import numpy as np
from scipy import stats

from jjal import exceptions
from jjal.fitting.LeastSquares import least_squares_fit


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class JumpFilterConfig:

    """
        **Bands of the latching state filter**

        :param state_means: Mean quadrature value of each tracked state, by label
        :type state_means: dict
        :param band_halfwidth: Half width sigma of the band around each mean
        :type band_halfwidth: float
    """

    state_means: dict
    band_halfwidth: float

    def __post_init__(self):
        if not self.band_halfwidth > 0:
            raise exceptions.InvalidParameter('Band half width must be positive.', 'band_halfwidth')
        if len(self.state_means) < 2:
            raise exceptions.InvalidParameter('At least two states are needed.', 'state_means')

        for (first, a), (second, b) in itertools.combinations(self.state_means.items(), 2):
            if abs(a - b) <= 2 * self.band_halfwidth:
                raise exceptions.InvalidParameter('Bands of {} and {} overlap.'.format(first, second), 'state_means')

    @property
    def labels(self):
        return list(self.state_means)


@dataclasses.dataclass(frozen=True)
class StateAssignment:

    """
        **Latched state labels of a quadrature record**

        :param labels: State label per sample
        :type labels: numpy.ndarray
        :param jumps: Number of state changes
        :type jumps: int
        :param dwell_times: Lengths in samples of the uninterrupted stays, by state label
        :type dwell_times: dict
    """

    labels: np.ndarray
    jumps: int
    dwell_times: dict

    def dwell_histogram(self, label, bins=20):
        return np.histogram(self.dwell_times.get(label, []), bins=bins)

    def mean_dwell(self, label):
        times = self.dwell_times.get(label, [])
        return float(np.mean(times)) if len(times) else 0.0


def assign_qubit_states(q_series, config):

    """
        **Latching multi-point filter for quantum jump records**

        A sample inside the +-sigma band of a state switches to that state; samples outside
        every band keep the current state. Samples before the first in-band sample take the
        state of that first in-band sample.

        :param q_series: Quadrature record
        :type q_series: numpy.ndarray
        :param config: State bands
        :type config: JumpFilterConfig
        :return: Per-sample labels, jump count and dwell times
        :rtype: StateAssignment
    """

    q_series = np.asarray(q_series, dtype=float)
    labels = np.array(config.labels)
    means = np.array([config.state_means[label] for label in labels])

    inside = np.abs(q_series[:, None] - means[None, :]) <= config.band_halfwidth
    band = np.where(inside.any(axis=1), inside.argmax(axis=1), -1)
    in_band = np.flatnonzero(band >= 0)

    if in_band.size == 0:
        raise exceptions.NoInBandSample('No sample falls inside any state band.')

    last_seen = np.where(band >= 0, np.arange(band.size), in_band[0])
    latched = band[np.maximum.accumulate(last_seen)]

    changes = np.flatnonzero(np.diff(latched)) + 1
    starts = np.concatenate([[0], changes])
    lengths = np.diff(np.concatenate([starts, [latched.size]]))

    dwell_times = {label: [] for label in labels.tolist()}
    for start, length in zip(starts, lengths):
        dwell_times[labels[latched[start]].item()].append(int(length))

    logger.info('Assigned %d samples with %d jumps', latched.size, changes.size)
    return StateAssignment(labels=labels[latched], jumps=int(changes.size), dwell_times=dwell_times)


def threshold_fidelity(separation, sigma):

    """
        **Two-state discrimination fidelity with a midpoint threshold**

        F = 1 - P(e|g) - P(g|e) for two Gaussian blobs of width sigma.
    """

    return 2 * stats.norm.cdf(separation / (2 * sigma)) - 1


def separation_for_fidelity(fidelity, sigma):

    """
        **Blob separation that a midpoint-threshold fidelity implies**

        :param fidelity: Target fidelity in (0, 1)
        :type fidelity: float
        :param sigma: Blob width
        :type sigma: float
        :return: Separation of the two means
        :rtype: float
    """

    if not 0 < fidelity < 1:
        raise exceptions.InvalidParameter('Fidelity must lie in (0, 1).', 'fidelity')
    return 2 * sigma * stats.norm.ppf((1 + fidelity) / 2)


def discrimination_fidelity(q_values, truth, ground_mean, excited_mean):

    """
        **Measured two-state fidelity with a midpoint threshold**

        :param q_values: Quadrature samples
        :type q_values: numpy.ndarray
        :param truth: True state per sample, 0 for ground and 1 for excited
        :type truth: numpy.ndarray
        :param ground_mean: Mean of the ground state blob
        :type ground_mean: float
        :param excited_mean: Mean of the excited state blob
        :type excited_mean: float
        :return: 1 - P(e|g) - P(g|e)
        :rtype: float
    """

    q_values = np.asarray(q_values, dtype=float)
    truth = np.asarray(truth)
    threshold = (ground_mean + excited_mean) / 2
    called_excited = (q_values > threshold) if excited_mean > ground_mean else (q_values < threshold)

    excited_given_ground = np.mean(called_excited[truth == 0])
    ground_given_excited = np.mean(~called_excited[truth == 1])
    return float(1 - excited_given_ground - ground_given_excited)


@dataclasses.dataclass(frozen=True)
class StatePopulations:

    """
        **Gaussian mixture fitted to a quadrature histogram**

        :param populations: Fraction of samples in each component
        :type populations: numpy.ndarray
        :param means: Component means
        :type means: numpy.ndarray
        :param sigma: Shared component width
        :type sigma: float
    """

    populations: np.ndarray
    means: np.ndarray
    sigma: float
    fit: object = None


def _gaussian_mixture(x, sigma, *params):
    total = np.zeros_like(x)
    for height, mean in zip(params[0::2], params[1::2]):
        total = total + height * np.exp(-(x - mean) ** 2 / (2 * sigma ** 2))
    return total


def fit_state_populations(q_values, means, sigma, bins=100):

    """
        **Populations of up to four states from a quadrature histogram**

        Fits a sum of Gaussians with a shared width to the histogram; the number of components
        is the number of initial means.

        :param q_values: Quadrature samples
        :type q_values: numpy.ndarray
        :param means: Initial component means, one per state
        :type means: list
        :param sigma: Initial shared width
        :type sigma: float
        :param bins: Number of histogram bins
        :type bins: int
        :return: Populations ordered like ``means``
        :rtype: StatePopulations
    """

    if not 1 <= len(means) <= 4:
        raise exceptions.InvalidParameter('Between one and four components are supported.', 'means')

    counts, edges = np.histogram(np.asarray(q_values, dtype=float), bins=bins)
    centers = (edges[:-1] + edges[1:]) / 2

    init = [sigma]
    names = ['sigma']
    for index, mean in enumerate(means):
        init += [max(counts[np.argmin(np.abs(centers - mean))], 1.0), mean]
        names += ['height_{}'.format(index), 'mean_{}'.format(index)]
    lower = [1e-12] + [0.0, -np.inf] * len(means)

    fit = least_squares_fit(_gaussian_mixture, centers, counts.astype(float), init,
                            bounds=(lower, [np.inf] * len(init)), names=names)

    heights = np.array([fit.parameters['height_{}'.format(index)] for index in range(len(means))])
    fitted_means = np.array([fit.parameters['mean_{}'.format(index)] for index in range(len(means))])
    populations = heights / heights.sum()

    return StatePopulations(populations=populations, means=fitted_means, sigma=abs(fit.parameters['sigma']), fit=fit)
