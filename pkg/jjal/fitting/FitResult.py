import dataclasses

import numpy as np


@dataclasses.dataclass
class FitResult:

    """
        **Outcome of a least-squares fit**

        :param parameters: Fitted values by parameter name
        :type parameters: dict
        :param standard_errors: Standard errors by parameter name, ``inf`` when not identifiable
        :type standard_errors: dict
        :param residual_rms: Root mean square of the final residuals
        :type residual_rms: float
        :param iterations: Number of Jacobian evaluations
        :type iterations: int
        :param converged: Whether a tolerance was met before the evaluation cap
        :type converged: bool
        :param identifiable: Whether the Jacobian has full column rank at the solution
        :type identifiable: bool
        :param derived: Quantities computed from the fitted parameters
        :type derived: dict
        :param message: Termination message of the optimizer
        :type message: str
    """

    parameters: dict
    standard_errors: dict
    residual_rms: float
    iterations: int
    converged: bool
    identifiable: bool = True
    derived: dict = dataclasses.field(default_factory=dict)
    message: str = ''

    def __getitem__(self, name):
        if name in self.parameters:
            return self.parameters[name]
        return self.derived[name]

    def values(self):
        return np.array(list(self.parameters.values()))

    def as_dict(self):

        """
            **Plain dictionary for result documents**
        """

        return {
            'parameters': {name: float(value) for name, value in self.parameters.items()},
            'standard_errors': {name: float(value) for name, value in self.standard_errors.items()},
            'derived': {name: float(value) for name, value in self.derived.items()},
            'residual_rms': float(self.residual_rms),
            'iterations': int(self.iterations),
            'converged': bool(self.converged),
            'identifiable': bool(self.identifiable),
        }

    def rescaled(self, scales, derived=None):

        """
            **Copy with parameters and errors multiplied by per-parameter scales**

            Fit families work in scaled internal units and convert back to SI with this.

            :param scales: Scale factor by parameter name, also used to rename when a tuple (name, factor)
            :type scales: dict
            :param derived: Derived quantities to attach
            :type derived: dict
            :rtype: FitResult
        """

        parameters = {}
        errors = {}
        for name, value in self.parameters.items():
            new_name, factor = scales.get(name, (name, 1.0))
            parameters[new_name] = value * factor
            errors[new_name] = self.standard_errors[name] * abs(factor)

        return dataclasses.replace(self, parameters=parameters, standard_errors=errors,
                                   derived=dict(derived or self.derived))
