"""
Relative uncertainty of the Ramsey probability and its constrained stationary points in the Ramsey time

With x = alpha T and r = Theta / alpha (Theta = theta - beta) the relative uncertainty is

    G(x) = (pi/2) e^{-x} |sin(r x)| / (1 + e^{-x} cos(r x))

and the Lagrange condition d/dT [dP/P - Lambda (d_omega - pi/T)] = 0, divided by alpha, becomes

    R(x) = G'(x) - pi Lambda / x^2 = 0

with a dimensionless multiplier Lambda. Everything below is solved in these rescaled variables, so solutions only
depend on (alpha T, Theta / alpha, Lambda).
"""

import collections
import functools
import math

import numpy as np
import scipy.optimize

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as helper
import dclock.log_utils as log
import dclock.ramsey as ramsey


# Exceptions


class PoleError(exceptions.NumericalError):
    """Exception class for evaluations at a vanishing excitation probability"""
    pass


class NoInteriorRoot(exceptions.NumericalError):
    """Exception class for brackets without a constrained minimum"""
    pass


# Module Variables


# |sin(Theta T)| below this marks a kink of |sin|, where the residual jumps instead of crossing zero
KINK_TOLERANCE = 1e-7

BISECT_XTOL = 1e-14
BISECT_MAXITER = 200

# Stationary Ramsey time, multiplier used, alpha T, residual at the root and 'minimum' or 'maximum'
StationaritySolution = collections.namedtuple('StationaritySolution', 'T_star Lambda alphaT residual kind')

# One cell of the order-unity sweep; t_star, alpha_t and residual are None unless status is 'ok'
# The trailing columns compare the uncertainty and the stationarity condition with their published forms at the root
SweepRow = collections.namedtuple(
    'SweepRow', 'alpha lambda_multiplier theta_branch t_star alpha_t residual status '
                'uncertainty uncertainty_printed printed_residual',
    defaults=(None, None, None))

SweepSummary = collections.namedtuple('SweepSummary', 'roots minimum median maximum')

SweepResult = collections.namedtuple('SweepResult', 'rows summary')

STATUS_OK = 'ok'
STATUS_NO_ROOT = 'no-interior-root'
STATUS_FAILED = 'numerical-failure'

# |printed residual| at or below this counts as the published condition also vanishing at a root
PRINTED_AGREEMENT_TOLERANCE = 1e-6


# Types


@helper.frozen
class UncertaintyParams:

    def __init__(self, alpha, beta, theta, T):
        ramsey._require_finite(alpha=alpha, beta=beta, theta=theta, T=T)
        if alpha < 0:
            raise ramsey.InvalidParameter('Dephasing rate alpha must be non-negative, got {}'.format(alpha))
        if T <= 0:
            raise ramsey.InvalidParameter('Ramsey time T must be positive, got {}'.format(T))
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.theta = float(theta)
        self.T = float(T)

    @property
    def Theta(self):
        return self.theta - self.beta

    def __repr__(self):
        return "{}(alpha={}, beta={}, theta={}, T={})".format(
            type(self).__name__, self.alpha, self.beta, self.theta, self.T)


# Objective


def _denominator(decay, phase):
    denominator = 1 + ramsey.FRINGE_SIGN * decay * math.cos(phase)
    if abs(denominator) < config.POLE_TOLERANCE:
        raise PoleError('Excitation probability vanishes (denominator {:.3e})'.format(denominator))
    return denominator


def relative_uncertainty(u):
    """
    dP/P with dP = |dP/d_omega| * pi/T, recomputed from the implemented probability
    :return: (pi/2) e^{-alpha T} |sin(Theta T)| / |1 + e^{-alpha T} cos(Theta T)|
    """
    decay = math.exp(-u.alpha * u.T)
    phase = u.Theta * u.T
    return 0.5 * math.pi * decay * abs(math.sin(phase)) / abs(_denominator(decay, phase))


def relative_uncertainty_printed(u):
    """Published form of dP/P (signed sine), kept for comparison output"""
    decay = math.exp(-u.alpha * u.T)
    phase = u.Theta * u.T
    return 0.5 * math.pi * decay * math.sin(phase) / (1 + decay * math.cos(phase))


def _objective(x, r, Lambda):
    """Rescaled constrained objective G(x) + pi Lambda / x (the constant Lambda * d_omega is dropped)"""
    decay = math.exp(-x)
    return 0.5 * math.pi * decay * abs(math.sin(r * x)) / _denominator(decay, r * x) + math.pi * Lambda / x


def _residual(x, r, Lambda):
    sine, cosine = math.sin(r * x), math.cos(r * x)
    decay = math.exp(-x)
    denominator = _denominator(decay, r * x)
    slope = 0.5 * math.pi * np.sign(sine) * (decay * (r * cosine - sine) + r * decay * decay) / denominator ** 2
    return float(slope - math.pi * Lambda / x ** 2)


def _rescale(T, alpha, Theta):
    ramsey._require_finite(T=T, alpha=alpha, Theta=Theta)
    if alpha <= 0:
        raise ramsey.InvalidParameter('Rescaling needs a positive dephasing rate, got alpha={}'.format(alpha))
    if T <= 0:
        raise ramsey.InvalidParameter('Ramsey time T must be positive, got {}'.format(T))
    return alpha * T, Theta / alpha


def stationarity_residual(T, alpha, Theta, Lambda):
    """
    (1/alpha) d/dT [dP/P - Lambda (d_omega - pi/T)] evaluated analytically
    :param T: Ramsey time
    :param alpha: Dephasing rate (> 0)
    :param Theta: theta - beta
    :param Lambda: Dimensionless multiplier (alpha times the multiplier in physical units)
    """
    ramsey._require_finite(Lambda=Lambda)
    x, r = _rescale(T, alpha, Theta)
    return _residual(x, r, Lambda)


def printed_stationarity_residual(T, alpha, Theta, Lambda):
    """
    Published polynomial form of the stationarity condition, in rescaled variables:
    e^{-2x} (r x^2 - 2 Lambda cos^2) + e^{-x} ((r x^2 - 4 Lambda) cos - x^2 sin) - 2 Lambda
    It follows from the signed objective and equals (2 x^2 D^2 / pi) R(x) wherever sin(r x) > 0
    """
    ramsey._require_finite(Lambda=Lambda)
    x, r = _rescale(T, alpha, Theta)
    sine, cosine = math.sin(r * x), math.cos(r * x)
    return (
        math.exp(-2 * x) * (r * x * x - 2 * Lambda * cosine ** 2)
        + math.exp(-x) * ((r * x * x - 4 * Lambda) * cosine - x * x * sine)
        - 2 * Lambda
    )


# Root finding


def _solve_bracket(lo, hi, r, Lambda, alpha):
    """Bisect one sign change of the residual; None when it is a kink rather than a root"""
    x = float(scipy.optimize.bisect(_residual, lo, hi, args=(r, Lambda), xtol=BISECT_XTOL, maxiter=BISECT_MAXITER))
    residual = _residual(x, r, Lambda)
    if abs(math.sin(r * x)) < KINK_TOLERANCE or abs(residual) > config.RESIDUAL_TOLERANCE:
        log.logger.warning('Rejected kink at alpha*T=%s (residual %s)', x, residual)
        return None
    kind = 'minimum' if _residual(hi, r, Lambda) > 0 else 'maximum'
    return StationaritySolution(x / alpha, Lambda, x, residual, kind)


def stationary_points(alpha, Theta, Lambda, bracket=config.DEFAULT_ALPHA_T_BRACKET,
                      subdivisions=config.DEFAULT_BRACKET_SUBDIVISIONS):
    """
    All stationary points with alpha T inside 'bracket', located by subdividing it and bisecting every sign change
    :param bracket: (low, high) in units of alpha T
    :param subdivisions: Number of equal sub-brackets scanned for sign changes
    :return: List of StationaritySolution ordered by T_star
    """
    _, r = _rescale(1.0, alpha, Theta)
    ramsey._require_finite(Lambda=Lambda)
    lo, hi = bracket
    if not 0 < lo < hi:
        raise ramsey.InvalidParameter('Bracket must satisfy 0 < low < high, got {}'.format(bracket))
    if subdivisions < 1:
        raise ramsey.InvalidParameter('Subdivisions must be positive, got {}'.format(subdivisions))

    nodes = np.linspace(lo, hi, subdivisions + 1)
    values = [_residual(x, r, Lambda) for x in nodes]
    solutions = []
    for i in range(subdivisions):
        if values[i] * values[i + 1] <= 0 and values[i + 1] != 0:
            solution = _solve_bracket(nodes[i], nodes[i + 1], r, Lambda, alpha)
            if solution is not None:
                solutions.append(solution)
    log.logger.debug('alpha=%s Theta=%s Lambda=%s: %d stationary points', alpha, Theta, Lambda, len(solutions))
    return solutions


def solve_optimal_T(alpha, Theta, Lambda, bracket=config.DEFAULT_ALPHA_T_BRACKET,
                    subdivisions=config.DEFAULT_BRACKET_SUBDIVISIONS):
    """
    Constrained minimum of the relative uncertainty in the Ramsey time
    When several minima lie in the bracket the one with the lowest objective wins
    :raises NoInteriorRoot: The bracket holds no minimum (only maxima, kinks or no sign change)
    """
    minima = [s for s in stationary_points(alpha, Theta, Lambda, bracket, subdivisions) if s.kind == 'minimum']
    if not minima:
        raise NoInteriorRoot('No constrained minimum for alpha={}, Theta={}, Lambda={} in alpha*T bracket {}'.format(
            alpha, Theta, Lambda, tuple(bracket)))
    r = Theta / alpha
    return min(minima, key=lambda s: _objective(s.alphaT, r, Lambda))


# Sweep


def default_lambda_grid():
    """Lambda = 0 followed by -|Lambda| for |Lambda| log-spaced over the order-unity band"""
    low, high, count = config.DEFAULT_LAMBDA_MAGNITUDES
    return (0.0,) + tuple(-float(m) for m in np.geomspace(low, high, count))


def _sweep_cell(cell, bracket, subdivisions):
    alpha, Lambda, branch = cell
    Theta = branch * alpha
    try:
        solution = solve_optimal_T(alpha, Theta, Lambda, bracket, subdivisions)
        u = UncertaintyParams(alpha, 0.0, Theta, solution.T_star)
        comparison = (relative_uncertainty(u), relative_uncertainty_printed(u),
                      printed_stationarity_residual(solution.T_star, alpha, Theta, Lambda))
    except NoInteriorRoot:
        return SweepRow(alpha, Lambda, branch, None, None, None, STATUS_NO_ROOT)
    except exceptions.NumericalError as ex:
        log.logger.warning('Sweep cell %s failed: %s', cell, ex)
        return SweepRow(alpha, Lambda, branch, None, None, None, STATUS_FAILED)
    return SweepRow(alpha, Lambda, branch, solution.T_star, solution.alphaT, solution.residual, STATUS_OK, *comparison)


def summarize(rows):
    alpha_ts = [row.alpha_t for row in rows if row.status == STATUS_OK]
    if not alpha_ts:
        return SweepSummary(0, None, None, None)
    return SweepSummary(len(alpha_ts), min(alpha_ts), float(np.median(alpha_ts)), max(alpha_ts))


def order_unity_sweep(alphas=config.DEFAULT_ALPHA_GRID, lambdas=None, branches=(1, -1),
                      bracket=config.DEFAULT_ALPHA_T_BRACKET, subdivisions=config.DEFAULT_BRACKET_SUBDIVISIONS):
    """
    Solve for the optimal Ramsey time over a grid of dephasing rates and multipliers with Theta = +-alpha
    Failing cells are recorded with their status and the sweep continues; rows follow grid order
    :return: SweepResult with one SweepRow per (alpha, Lambda, branch) and the alpha T summary
    """
    lambdas = default_lambda_grid() if lambdas is None else tuple(lambdas)
    alphas = tuple(alphas)
    if not alphas or not lambdas or not branches:
        raise ramsey.InvalidParameter('Sweep grids must not be empty')
    cells = [(float(alpha), float(Lambda), branch) for alpha in alphas for Lambda in lambdas for branch in branches]
    rows = helper.parallel_map(functools.partial(_sweep_cell, bracket=bracket, subdivisions=subdivisions), cells)
    summary = summarize(rows)
    log.logger.debug('Sweep of %d cells: %s', len(cells), summary)
    return SweepResult(rows, summary)


def printed_agreement(result, tolerance=PRINTED_AGREEMENT_TOLERANCE):
    """Rows with a root at which the published stationarity condition also vanishes"""
    return [row for row in result.rows if row.status == STATUS_OK and row.printed_residual is not None
            and abs(row.printed_residual) <= tolerance]


def outside_band(result, band=config.ORDER_UNITY_BAND):
    """Rows whose alpha T falls outside 'band'"""
    low, high = band
    return [row for row in result.rows if row.status == STATUS_OK and not low <= row.alpha_t <= high]
