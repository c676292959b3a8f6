class JJALError(Exception):

    """
        **Base exception for jjal**

        Every error raised by the package derives from this class.
        The ``category`` attribute groups errors for the command line exit codes.
    """

    category = 'internal'

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class InvalidDesign(JJALError):

    """
        **Custom invalid design exception**

        Raised whenever an array design violates its parameter invariants.
    """

    category = 'config'

    def __init__(self, message, field):
        super().__init__(message)
        self.field = field


class ConfigError(JJALError):

    """
        **Custom configuration exception**

        Raised whenever a design file or environment setting cannot be used,
        e.g. an unknown key in a design file.
    """

    category = 'config'

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class InvalidParameter(JJALError):

    """
        **Custom exception for arguments outside their physical range**

        Raised whenever an argument violates the precondition of an operation, e.g. a negative width.
    """

    category = 'input'

    def __init__(self, message, parameter):
        super().__init__(message)
        self.parameter = parameter


class FrustrationSingularity(JJALError):

    """
        **Custom exception for a fully frustrated SQUID**

        Raised whenever a finite inductance is requested at half a flux quantum.
    """

    category = 'physics'

    def __init__(self, message, flux):
        super().__init__(message)
        self.flux = flux


class NotPositiveDefinite(JJALError):

    """
        **Custom exception for matrices that are not positive definite**

        Raised whenever a matrix square root needs a positive definite input.
    """

    category = 'numerics'

    def __init__(self, message, smallest_eigenvalue):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


class OddModeCount(JJALError):

    """
        **Custom exception for unpaired modes**

        Raised whenever an odd number of modes lies below the pairing cut-off.
    """

    category = 'physics'

    def __init__(self, message, mode_count):
        super().__init__(message)
        self.mode_count = mode_count


class IndexOutOfRange(JJALError):

    """
        **Custom mode index exception**

        Raised whenever a mode index does not exist in the spectrum.
    """

    category = 'input'

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class EmptyGrid(JJALError):

    """
        **Custom exception for empty frequency grids**
    """

    category = 'input'


class InvalidGrid(JJALError):

    """
        **Custom exception for frequency grids that are not strictly increasing**

        Also raised for grids reaching far above the plasma frequency.
    """

    category = 'input'


class NoResonanceFound(JJALError):

    """
        **Custom exception for traces without a resonance**

        Raised whenever a reflection trace holds no full phase winding.
    """

    category = 'fit'


class SingularJacobian(JJALError):

    """
        **Custom exception for degenerate fit problems**

        Raised whenever the model does not depend on any fit parameter at the start point,
        or returns non-finite values there.
    """

    category = 'fit'


class NoLobeFound(JJALError):

    """
        **Custom exception for gain traces without amplification**

        Raised whenever no gain lobe exceeds 3 dB.
    """

    category = 'fit'


class GridMismatch(JJALError):

    """
        **Custom exception for spectra on different frequency grids**
    """

    category = 'input'


class ZeroKappa(JJALError):

    """
        **Custom exception for a vanishing external coupling rate**
    """

    category = 'physics'


class CutoffTooSmall(JJALError):

    """
        **Custom exception for unconverged basis truncations**

        Raised whenever doubling a basis cutoff still shifts the requested levels.
    """

    category = 'numerics'

    def __init__(self, message, cutoff):
        super().__init__(message)
        self.cutoff = cutoff


class InvertedPopulation(JJALError):

    """
        **Custom exception for populations that do not decrease with energy**

        Raised whenever the excited state is at least as populated as the ground state.
    """

    category = 'physics'


class NoInBandSample(JJALError):

    """
        **Custom exception for quadrature records outside every state band**
    """

    category = 'input'


class SchemaMismatch(JJALError):

    """
        **Custom exception for unexpected table headers**

        Raised whenever a CSV header or a populations document does not match the expected layout.
    """

    category = 'input'

    def __init__(self, message, header):
        super().__init__(message)
        self.header = header


class UnitError(JJALError):

    """
        **Custom exception for unparsable or non-physical values**

        Raised whenever a table cell cannot be converted to its unit.
    """

    category = 'input'

    def __init__(self, message, line):
        super().__init__(message)
        self.line = line


class EmptyFile(JJALError):

    """
        **Custom exception for input files without data rows**
    """

    category = 'input'


class InsufficientData(JJALError):

    """
        **Custom exception for fits with fewer points than parameters**
    """

    category = 'input'

    def __init__(self, message, points, parameters):
        super().__init__(message)
        self.points = points
        self.parameters = parameters


class IdentifiabilityWarning(UserWarning):

    """
        **Warning for fit parameters the data cannot pin down**
    """

    pass


class MaxIterationsWarning(UserWarning):

    """
        **Warning for fits that stopped at the iteration cap**
    """

    pass


class NonDispersiveWarning(UserWarning):

    """
        **Warning for qubit-resonator couplings outside the dispersive regime**
    """

    pass


class NonlinearityWarning(UserWarning):

    """
        **Warning for photon calibrations that are not linear in drive power**
    """

    pass


class TransmonRegimeWarning(UserWarning):

    """
        **Warning for E_J/E_c ratios below the transmon regime**
    """

    pass
