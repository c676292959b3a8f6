import dataclasses
import logging

import numpy as np

from jjal import exceptions


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class VisibilitySpectrum:

    """
        **Noise visibility, the output power with the pump on minus pump off**

        :param frequencies: Frequencies in Hz
        :type frequencies: numpy.ndarray
        :param visibility_db: Pointwise difference in dB
        :type visibility_db: numpy.ndarray
    """

    frequencies: np.ndarray
    visibility_db: np.ndarray

    @property
    def maximum_db(self):
        return float(np.max(self.visibility_db))

    @property
    def peak_frequency(self):
        return float(self.frequencies[np.argmax(self.visibility_db)])


def noise_visibility(frequencies_on, psd_on_dbm_hz, frequencies_off, psd_off_dbm_hz):

    """
        **Noise visibility of a pumped amplifier**

        :param frequencies_on: Frequency grid of the pump-on spectrum in Hz
        :type frequencies_on: numpy.ndarray
        :param psd_on_dbm_hz: Power spectral density with the pump on in dBm/Hz
        :type psd_on_dbm_hz: numpy.ndarray
        :param frequencies_off: Frequency grid of the pump-off spectrum in Hz
        :type frequencies_off: numpy.ndarray
        :param psd_off_dbm_hz: Power spectral density with the pump off in dBm/Hz
        :type psd_off_dbm_hz: numpy.ndarray
        :return: Visibility with its maximum and the frequency of the maximum
        :rtype: VisibilitySpectrum
    """

    frequencies_on = np.asarray(frequencies_on, dtype=float)
    frequencies_off = np.asarray(frequencies_off, dtype=float)

    if frequencies_on.shape != frequencies_off.shape or not np.array_equal(frequencies_on, frequencies_off):
        raise exceptions.GridMismatch('Pump-on and pump-off spectra use different frequency grids.')
    if frequencies_on.size == 0:
        raise exceptions.EmptyGrid('Spectra hold no points.')

    visibility = np.asarray(psd_on_dbm_hz, dtype=float) - np.asarray(psd_off_dbm_hz, dtype=float)
    spectrum = VisibilitySpectrum(frequencies_on, visibility)

    logger.info('Maximal noise visibility %.3g dB at %.6g GHz', spectrum.maximum_db, spectrum.peak_frequency / 1e9)
    return spectrum
