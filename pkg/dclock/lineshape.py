"""
Lineshape scans over the drive frequency: central fringe width and fringe contrast

Widths are measured at the mid-contrast level (P_max + P_min)/2, which is the usual half maximum for a full
contrast fringe and keeps the width independent of the dephasing rate.
"""

import collections
import math

import numpy as np

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as helper
import dclock.lindblad as lindblad
import dclock.log_utils as log
import dclock.ramsey as ramsey


# Exceptions


class InvalidGrid(exceptions.DClockException):
    """Exception class for empty, unsorted or mismatched frequency grids"""
    pass


class FringeNotBracketed(exceptions.NumericalError):
    """Exception class for scans whose grid ends before the central fringe crosses the mid-contrast level"""
    pass


class NoFringe(exceptions.NumericalError):
    """Exception class for scans without a measurable fringe"""
    pass


class InsufficientResolution(exceptions.NumericalError):
    """Exception class for scans sampling the central fringe too coarsely"""
    pass


# Module Variables


SOURCES = ('analytic', 'oracle')

# Location, mid-contrast width and contrast of the central fringe
FwhmResult = collections.namedtuple('FwhmResult', 'center width contrast')

# Measured contrast, the expected e^{-alpha T} (None when not known) and their absolute difference
ContrastResult = collections.namedtuple('ContrastResult', 'contrast expected deviation')


# Types


@helper.frozen
class LineshapeScan:
    """
    Sampled excitation probability over a strictly increasing grid of drive frequencies
    'nominal_center' is where the central fringe is expected (omega21 + beta for Ramsey scans), if known
    """

    def __init__(self, omegas, probabilities, source, nominal_center=None):
        omegas = np.asarray(omegas, dtype=float)
        probabilities = np.asarray(probabilities, dtype=float)
        _validate_grid(omegas)
        if probabilities.shape != omegas.shape:
            raise InvalidGrid('Got {} probabilities for {} frequencies'.format(len(probabilities), len(omegas)))
        tolerance = config.EVOLUTION_TOLERANCE
        if np.any(probabilities < -tolerance) or np.any(probabilities > 1 + tolerance):
            raise InvalidGrid('Probabilities must lie in [0, 1]')
        self.omegas = helper.readonly_array(omegas, dtype=float)
        self.probabilities = helper.readonly_array(probabilities, dtype=float)
        self.source = source
        self.nominal_center = None if nominal_center is None else float(nominal_center)

    @property
    def spacing(self):
        """Largest grid step"""
        return float(np.max(np.diff(self.omegas)))

    def __len__(self):
        return len(self.omegas)

    def __repr__(self):
        return "{}(source={}, points={}, omega=[{}, {}])".format(
            type(self).__name__, self.source, len(self), self.omegas[0], self.omegas[-1])


# Grids


def _validate_grid(omegas):
    if omegas.ndim != 1 or len(omegas) < 2:
        raise InvalidGrid('Frequency grid needs at least 2 points')
    if not np.all(np.isfinite(omegas)):
        raise InvalidGrid('Frequency grid contains non-finite values')
    if np.any(np.diff(omegas) <= 0):
        raise InvalidGrid('Frequency grid must be strictly increasing')


def fringe_center(p):
    """Drive frequency of the central Ramsey fringe"""
    return p.pulse.omega21 + p.gamma.beta


def centered_grid(p, count=config.DEFAULT_GRID_COUNT, periods=config.DEFAULT_FRINGE_PERIODS):
    """
    Uniform grid centred on the central fringe spanning 'periods' fringe periods (2 pi / T each)
    An odd 'count' puts a grid point exactly on the centre
    """
    if count < 2:
        raise InvalidGrid('Grid count must be at least 2, got {}'.format(count))
    half_span = periods * math.pi / p.T
    center = fringe_center(p)
    return np.linspace(center - half_span, center + half_span, count)


# Scans


def scan_lineshape(p, omegas, source='analytic', cfg=None):
    """
    Evaluate the excitation probability of a protocol at every drive frequency of a grid
    :param p: RamseyProtocol whose drive frequency is replaced point by point
    :param omegas: Strictly increasing drive frequencies
    :param source: 'analytic' (composed propagators) or 'oracle' (master equation)
    :param cfg: IntegratorConfig for the oracle
    :return: LineshapeScan
    """
    omegas = np.asarray(omegas, dtype=float)
    _validate_grid(omegas)
    if source not in SOURCES:
        raise InvalidGrid('Unknown source "{}", expected one of {}'.format(source, SOURCES))
    if omegas[-1] - omegas[0] < 2 * math.pi / p.T:
        log.logger.warning('Grid span %s is narrower than one fringe period %s', omegas[-1] - omegas[0],
                           2 * math.pi / p.T)

    if source == 'analytic':
        evaluate = ramsey.excitation_probability_full
    else:
        def evaluate(protocol):
            return lindblad.simulate_ramsey_numeric(protocol, cfg)

    log.logger.debug('Scanning %d points, source=%s', len(omegas), source)
    probabilities = helper.parallel_map(lambda omega: evaluate(p.with_omega(omega)), omegas)
    return LineshapeScan(omegas, probabilities, source, nominal_center=fringe_center(p))


def scan_rabi_lineshape(pulse, omegas):
    """Single-pulse (Rabi method) lineshape of 'pulse' over a grid of drive frequencies"""
    omegas = np.asarray(omegas, dtype=float)
    _validate_grid(omegas)
    probabilities = [
        ramsey.rabi_excitation_probability(pulse.lam, omega - pulse.omega21, pulse.tau) for omega in omegas
    ]
    return LineshapeScan(omegas, probabilities, 'analytic', nominal_center=pulse.omega21)


# Analysis


def _climb(probabilities, index):
    """Walk uphill from 'index' to the local maximum"""
    last = len(probabilities) - 1
    while True:
        if index < last and probabilities[index + 1] > probabilities[index]:
            index += 1
        elif index > 0 and probabilities[index - 1] > probabilities[index]:
            index -= 1
        else:
            return index


def _crossing(omegas, probabilities, inside, outside, level):
    """Linear interpolation of the mid-level crossing between an index above and an index below 'level'"""
    p_in, p_out = probabilities[inside], probabilities[outside]
    return omegas[outside] + (level - p_out) * (omegas[inside] - omegas[outside]) / (p_in - p_out)


def fwhm(scan, center_hint=None):
    """
    Width of the central fringe at the mid-contrast level
    :param scan: LineshapeScan containing the central fringe
    :param center_hint: Expected location of the central fringe, defaults to the scan's nominal centre or grid middle
    :return: FwhmResult
    """
    omegas, probabilities = scan.omegas, scan.probabilities
    p_max, p_min = float(np.max(probabilities)), float(np.min(probabilities))
    contrast = p_max - p_min
    if contrast < config.MIN_CONTRAST:
        raise NoFringe('Fringe contrast {:.3e} is below {:.1e}'.format(contrast, config.MIN_CONTRAST))
    level = 0.5 * (p_max + p_min)

    hint = scan.nominal_center if center_hint is None else center_hint
    start = len(omegas) // 2 if hint is None else int(np.argmin(np.abs(omegas - hint)))
    peak = _climb(probabilities, start)

    left = peak
    while probabilities[left] > level:
        if left == 0:
            raise FringeNotBracketed('Central fringe is not bracketed below omega={}'.format(omegas[0]))
        left -= 1
    right = peak
    while probabilities[right] > level:
        if right == len(omegas) - 1:
            raise FringeNotBracketed('Central fringe is not bracketed above omega={}'.format(omegas[-1]))
        right += 1

    points = right - left - 1
    if points < config.FWHM_MIN_POINTS:
        raise InsufficientResolution('Only {} points across the central fringe, need {}'.format(
            points, config.FWHM_MIN_POINTS))

    low = _crossing(omegas, probabilities, left + 1, left, level)
    high = _crossing(omegas, probabilities, right - 1, right, level)
    log.logger.debug('Central fringe at %s, crossings %s and %s', omegas[peak], low, high)
    return FwhmResult(float(omegas[peak]), float(high - low), contrast)


def fringe_contrast(scan, alpha_t=None):
    """
    P_max - P_min over the scan, optionally compared with the expected e^{-alpha T}
    Small contrasts are reported, not rejected
    """
    contrast = float(np.max(scan.probabilities) - np.min(scan.probabilities))
    if alpha_t is None:
        return ContrastResult(contrast, None, None)
    expected = math.exp(-alpha_t)
    return ContrastResult(contrast, expected, abs(contrast - expected))
