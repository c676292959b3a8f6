import logging
import warnings

import numpy as np
import scipy.optimize as spopt

from jjal import exceptions
from jjal.fitting.FitResult import FitResult


logger = logging.getLogger(__name__)

FTOL = 1e-12
XTOL = 1e-12
GTOL = 1e-10
MAX_EVALUATIONS = 500


def _as_real(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return np.concatenate([values.real, values.imag])
    return values.astype(float)


def _forward_jacobian(residuals, params):
    base = residuals(params)
    jacobian = np.empty((base.size, params.size))
    for column in range(params.size):
        step = np.sqrt(np.finfo(float).eps) * max(1.0, abs(params[column]))
        shifted = params.copy()
        shifted[column] += step
        jacobian[:, column] = (residuals(shifted) - base) / step
    return base, jacobian


def least_squares_fit(model, xdata, ydata, init, bounds=None, names=None):

    """
        **Damped nonlinear least squares**

        Trust-region reflective least squares with a forward-difference Jacobian. Complex
        data is fitted on stacked real and imaginary parts. Standard errors come from the
        residual-scaled covariance s^2 (J^T J)^-1.

        :param model: Callable ``model(xdata, *params)`` returning the predicted observations
        :type model: callable
        :param xdata: Independent variable
        :type xdata: numpy.ndarray
        :param ydata: Observations, real or complex
        :type ydata: numpy.ndarray
        :param init: Start values
        :type init: list
        :param bounds: Pair (lower, upper) of per-parameter bounds
        :type bounds: tuple
        :param names: Parameter names, ``p0``, ``p1``, ... when omitted
        :type names: list
        :return: The fit result, ``converged`` is False when the evaluation cap was hit
        :rtype: FitResult
    """

    init = np.asarray(init, dtype=float)
    names = list(names) if names is not None else ['p{}'.format(i) for i in range(init.size)]
    observed = _as_real(ydata)

    if observed.size < init.size:
        raise exceptions.InsufficientData('{} observations for {} parameters.'.format(observed.size, init.size),
                                          observed.size, init.size)

    if bounds is None:
        bounds = (np.full(init.size, -np.inf), np.full(init.size, np.inf))
    lower, upper = (np.asarray(bound, dtype=float) for bound in bounds)
    init = np.clip(init, lower, upper)

    def residuals(params):
        return _as_real(model(xdata, *params)) - observed

    start, jacobian = _forward_jacobian(residuals, init)
    if not (np.all(np.isfinite(start)) and np.all(np.isfinite(jacobian))):
        raise exceptions.SingularJacobian('Model is not finite at the start point.')
    if not np.any(jacobian):
        raise exceptions.SingularJacobian('Model does not depend on any parameter at the start point.')

    result = spopt.least_squares(residuals, init, jac='2-point', bounds=(lower, upper), method='trf',
                                 ftol=FTOL, xtol=XTOL, gtol=GTOL, max_nfev=MAX_EVALUATIONS, x_scale='jac')

    converged = result.status > 0
    if not converged:
        warnings.warn('Fit stopped after {} evaluations without converging.'.format(result.nfev),
                      exceptions.MaxIterationsWarning)

    m, n = result.fun.size, result.x.size
    rank = np.linalg.matrix_rank(result.jac)
    identifiable = rank == n

    if identifiable and m > n:
        variance = 2 * result.cost / (m - n)
        covariance = variance * np.linalg.pinv(result.jac.T @ result.jac)
        errors = np.sqrt(np.abs(np.diag(covariance)))
    elif identifiable:
        errors = np.full(n, np.nan)
    else:
        logger.warning('Jacobian has rank %d of %d, standard errors are undefined', rank, n)
        errors = np.full(n, np.inf)

    logger.debug('Fit finished: status %d, %d evaluations, cost %.3g', result.status, result.nfev, result.cost)

    return FitResult(
        parameters=dict(zip(names, (float(value) for value in result.x))),
        standard_errors=dict(zip(names, (float(value) for value in errors))),
        residual_rms=float(np.sqrt(np.mean(result.fun ** 2))),
        iterations=int(result.njev if result.njev is not None else result.nfev),
        converged=bool(converged),
        identifiable=bool(identifiable),
        message=str(result.message),
    )
