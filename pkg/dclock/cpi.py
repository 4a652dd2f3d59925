"""
Finite-dimensional conditional probabilities for a clock C entangled with a remainder R

The global state sum_j a_j |c_j> (x) |r_j> is static. Time enters only through the clock: the probability of a
clock reading x' is the period average of |<x'|e^{-i H_C t} psi_C0>|^2, and the remainder observable built by mapping
the clock eigenbasis through the Schmidt correlation reproduces the same distribution when the state is maximally
entangled.
"""

import collections
import math

import numpy as np
import scipy.integrate

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as helper
import dclock.lindblad as lindblad
import dclock.log_utils as log
import dclock.statespace as statespace


# Exceptions


class NonOrthonormalBasis(exceptions.DClockException):
    """Exception class for bases that are not orthonormal"""
    pass


class DimensionMismatch(exceptions.DClockException):
    """Exception class for operators or states of incompatible dimension"""
    pass


class WindowMismatch(exceptions.DClockException):
    """Exception class for integration windows that do not cover exactly one recurrence period"""
    pass


class UnknownOutcome(exceptions.DClockException):
    """Exception class for clock readings that are not eigenvalues of the clock observable"""
    pass


# Module Variables


BASIS_TOLERANCE = 1e-10
EIGENVALUE_TOLERANCE = 1e-9

# Eigenvalues (ascending) and matching eigenvectors (columns) of an observable
Spectrum = collections.namedtuple('Spectrum', 'values vectors')

# Clock and remainder distributions over the clock eigenbasis, with their distances
MirrorCheck = collections.namedtuple(
    'MirrorCheck', 'values p_c p_r max_difference total_variation maximally_entangled')


# Utils


def _hermitian(name, matrix, dimension=None):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch('{} must be a square matrix, got shape {}'.format(name, matrix.shape))
    if dimension is not None and matrix.shape[0] != dimension:
        raise DimensionMismatch('{} must be {}x{}, got shape {}'.format(name, dimension, dimension, matrix.shape))
    defect = float(np.max(np.abs(matrix - matrix.conj().T)))
    if defect > config.CONSTRUCTION_TOLERANCE:
        raise lindblad.NonHermitianHamiltonian('{} hermiticity defect {:.3e}'.format(name, defect))
    return matrix


def _basis(name, basis, dimension):
    basis = np.eye(dimension, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)
    if basis.shape != (dimension, dimension):
        raise DimensionMismatch('{} basis must be {}x{}, got shape {}'.format(name, dimension, dimension, basis.shape))
    defect = float(np.max(np.abs(basis.conj().T @ basis - np.eye(dimension))))
    if defect > BASIS_TOLERANCE:
        raise NonOrthonormalBasis('{} basis orthonormality defect {:.3e}'.format(name, defect))
    return basis


def spectrum(observable):
    values, vectors = np.linalg.eigh(observable)
    return Spectrum(values, vectors)


# Types


@helper.frozen
class BipartiteState:
    """
    sum_j coefficients[j] |c_j> (x) |r_j>, with basis vectors stored as matrix columns
    The clock factor comes first in every tensor product
    """

    def __init__(self, coefficients, clock_basis=None, remainder_basis=None):
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.ndim != 1 or len(coefficients) < config.CPI_MIN_DIMENSION:
            raise DimensionMismatch('Need at least {} coefficients'.format(config.CPI_MIN_DIMENSION))
        norm_defect = abs(float(np.sum(np.abs(coefficients) ** 2)) - 1)
        if norm_defect > config.CONSTRUCTION_TOLERANCE:
            raise statespace.InvalidState('Coefficients are not normalized (defect {:.3e})'.format(norm_defect))
        d = len(coefficients)
        self.d = d
        self.coefficients = helper.readonly_array(coefficients)
        self.clock_basis = helper.readonly_array(_basis('Clock', clock_basis, d))
        self.remainder_basis = helper.readonly_array(_basis('Remainder', remainder_basis, d))

    @property
    def vector(self):
        """State vector in the product of the computational bases (length d^2)"""
        return sum(a * np.kron(self.clock_basis[:, j], self.remainder_basis[:, j])
                   for j, a in enumerate(self.coefficients))

    @property
    def is_maximally_entangled(self):
        target = 1 / math.sqrt(self.d)
        return bool(np.all(np.abs(np.abs(self.coefficients) - target) <= config.CONSTRUCTION_TOLERANCE))

    def __repr__(self):
        return "{}(d={}, coefficients={})".format(type(self).__name__, self.d, self.coefficients.tolist())


@helper.frozen
class ClockModel:
    """
    Clock Hamiltonian H_C, clock observable X and the recurrence period of e^{-i H_C t}
    The period is checked: e^{-i H_C period} must be a global phase
    """

    def __init__(self, H_C, X, period):
        H_C = _hermitian('H_C', H_C)
        d = H_C.shape[0]
        X = _hermitian('X', X, d)
        if not np.isfinite(period) or period <= 0:
            raise WindowMismatch('Clock period must be positive, got {}'.format(period))
        energies, modes = np.linalg.eigh(H_C)
        self.d = d
        self.H_C = helper.readonly_array(H_C)
        self.X = helper.readonly_array(X)
        self.period = float(period)
        self._energies = helper.readonly_array(energies, dtype=float)
        self._modes = helper.readonly_array(modes)
        recurrence = self.propagator(self.period)
        defect = float(np.max(np.abs(recurrence - recurrence[0, 0] * np.eye(d))))
        if defect > config.EVOLUTION_TOLERANCE:
            raise WindowMismatch('{} is not a recurrence period of H_C (defect {:.3e})'.format(period, defect))

    def propagator(self, t):
        """e^{-i H_C t} from the spectral decomposition of H_C"""
        return (self._modes * np.exp(-1j * self._energies * t)) @ self._modes.conj().T

    def evolve(self, psi, times):
        """Clock states e^{-i H_C t} psi for every t, as the columns of a d x len(times) matrix"""
        coordinates = self._modes.conj().T @ psi
        phases = np.exp(-1j * np.outer(self._energies, times))
        return self._modes @ (coordinates[:, None] * phases)

    def __repr__(self):
        return "{}(d={}, period={})".format(type(self).__name__, self.d, self.period)


# Constructions


def build_entangled_state(d, clock_basis=None, remainder_basis=None):
    """Maximally entangled state with uniform real coefficients 1/sqrt(d); bases default to the computational ones"""
    if d < config.CPI_MIN_DIMENSION:
        raise DimensionMismatch('Dimension must be at least {}, got {}'.format(config.CPI_MIN_DIMENSION, d))
    return BipartiteState(np.full(d, 1 / math.sqrt(d)), clock_basis, remainder_basis)


def product_state(d, clock_basis=None, remainder_basis=None):
    """|c_0> (x) |r_0>, the Schmidt rank 1 counterpart of 'build_entangled_state'"""
    coefficients = np.zeros(d)
    coefficients[0] = 1
    return BipartiteState(coefficients, clock_basis, remainder_basis)


def default_clock(d, omega=1.0):
    """
    Clock with equally spaced levels H_C = omega diag(0, 1, ..., d-1), recurring after 2 pi / omega
    It is read through a tilted hopping observable: ones on the first off-diagonals and a linear ramp from -1/2 to
    1/2 on the diagonal, so its eigenbasis is not unbiased with respect to the energy basis
    """
    H_C = omega * np.diag(np.arange(d, dtype=float))
    X = np.eye(d, k=1) + np.eye(d, k=-1) + np.diag(np.linspace(-0.5, 0.5, d))
    return ClockModel(H_C, X, 2 * math.pi / omega)


def uniform_clock_state(d):
    return np.full(d, 1 / math.sqrt(d), dtype=complex)


def paired_hamiltonians(state, energies):
    """H_C = sum_j E_j |c_j><c_j| and H_R = -sum_j E_j |r_j><r_j|, so the global state carries zero total energy"""
    energies = np.asarray(energies, dtype=float)
    if energies.shape != (state.d,):
        raise DimensionMismatch('Need {} energies, got {}'.format(state.d, len(energies)))
    H_C = (state.clock_basis * energies) @ state.clock_basis.conj().T
    H_R = -(state.remainder_basis * energies) @ state.remainder_basis.conj().T
    return H_C, H_R


# Reductions


def _amplitude_matrix(state):
    """Coefficients of the state vector as a d x d matrix, clock index first"""
    return state.vector.reshape(state.d, state.d)


def reduced_clock_state(state):
    """Partial trace over the remainder"""
    amplitudes = _amplitude_matrix(state)
    return amplitudes @ amplitudes.conj().T


def schmidt_coefficients(state):
    """Schmidt coefficients in descending order"""
    return np.linalg.svd(_amplitude_matrix(state), compute_uv=False)


def schmidt_rank(state, tolerance=config.CONSTRUCTION_TOLERANCE):
    return int(np.sum(schmidt_coefficients(state) > tolerance))


def mirror_observable(state, X):
    """
    Remainder observable sum_k x_k |x~_k><x~_k| with |x~_k> = sum_j conj(<c_j|x_k>) |r_j>
    :return: (observable matrix, Spectrum of the mirror vectors in the order of the eigenvalues of X)
    """
    X = _hermitian('X', X, state.d)
    clock_spectrum = spectrum(X)
    overlaps = state.clock_basis.conj().T @ clock_spectrum.vectors
    mirror_vectors = state.remainder_basis @ overlaps.conj()
    observable = (mirror_vectors * clock_spectrum.values) @ mirror_vectors.conj().T
    return observable, Spectrum(clock_spectrum.values, mirror_vectors)


# Conditional probabilities


def _window(clock, window):
    window = (0.0, clock.period) if window is None else tuple(float(w) for w in window)
    length = window[1] - window[0]
    if not math.isclose(length, clock.period, rel_tol=1e-9):
        raise WindowMismatch('Window length {} does not match the clock period {}'.format(length, clock.period))
    return window


def _time_grid(clock, window, points):
    start, end = _window(clock, window)
    if points < 2:
        raise WindowMismatch('Quadrature needs at least 2 points, got {}'.format(points))
    return np.linspace(start, end, points + 1)


def _initial_clock_state(clock, psi_c0):
    psi = np.asarray(psi_c0, dtype=complex)
    if psi.shape != (clock.d,):
        raise DimensionMismatch('Clock state must have {} components, got shape {}'.format(clock.d, psi.shape))
    norm_defect = abs(float(np.vdot(psi, psi).real) - 1)
    if norm_defect > config.EVOLUTION_TOLERANCE:
        raise statespace.InvalidState('Clock state is not normalized (defect {:.3e})'.format(norm_defect))
    return psi


def clock_distribution(clock, psi_c0, window=None, points=config.CPI_QUADRATURE_POINTS):
    """
    Period-averaged probabilities of every clock eigenvector, by trapezoidal quadrature
    :return: (eigenvalues of X, normalized probabilities)
    """
    psi = _initial_clock_state(clock, psi_c0)
    times = _time_grid(clock, window, points)
    readings = spectrum(clock.X)
    amplitudes = readings.vectors.conj().T @ clock.evolve(psi, times)
    weights = scipy.integrate.trapezoid(np.abs(amplitudes) ** 2, times, axis=1)
    return readings.values, weights / np.sum(weights)


def conditional_probability_clock(x_prime, clock, psi_c0, window=None, points=config.CPI_QUADRATURE_POINTS):
    """
    Probability that the clock reads 'x_prime', averaged over one recurrence period
    Degenerate readings sum the probabilities of their eigenvectors
    """
    values, probabilities = clock_distribution(clock, psi_c0, window, points)
    matches = np.abs(values - x_prime) <= EIGENVALUE_TOLERANCE
    if not np.any(matches):
        raise UnknownOutcome('{} is not an eigenvalue of the clock observable {}'.format(x_prime, values.tolist()))
    return float(np.sum(probabilities[matches]))


def remainder_distribution(state, clock, psi_c0, window=None, points=config.CPI_QUADRATURE_POINTS):
    """
    Probabilities of the mirror eigenvectors on R, conditioned on the clock following e^{-i H_C t} psi_C0:
    integral |(<phi(t)| (x) <x~_k|) Psi|^2 dt / integral ||(<phi(t)| (x) 1) Psi||^2 dt
    """
    if state.d != clock.d:
        raise DimensionMismatch('State dimension {} does not match clock dimension {}'.format(state.d, clock.d))
    psi = _initial_clock_state(clock, psi_c0)
    times = _time_grid(clock, window, points)
    _, mirror = mirror_observable(state, clock.X)
    # Remainder states left after projecting the clock onto phi(t), one column per time
    conditioned = _amplitude_matrix(state).T @ clock.evolve(psi, times).conj()
    numerator = scipy.integrate.trapezoid(np.abs(mirror.vectors.conj().T @ conditioned) ** 2, times, axis=1)
    denominator = scipy.integrate.trapezoid(np.sum(np.abs(conditioned) ** 2, axis=0), times)
    if denominator <= config.CONSTRUCTION_TOLERANCE:
        raise statespace.InvalidState('Clock trajectory never overlaps the clock factor of the state')
    return mirror.values, numerator / denominator


def mirror_probability_check(state, clock, psi_c0, window=None, points=config.CPI_QUADRATURE_POINTS):
    """
    Compare the clock distribution with the mirror distribution on the remainder
    Non-maximally entangled states are not rejected: the distances are reported instead
    """
    values, p_c = clock_distribution(clock, psi_c0, window, points)
    _, p_r = remainder_distribution(state, clock, psi_c0, window, points)
    difference = np.abs(p_c - p_r)
    check = MirrorCheck(values, p_c, p_r, float(np.max(difference)), float(0.5 * np.sum(difference)),
                        state.is_maximally_entangled)
    log.logger.debug('Mirror check d=%d: max difference %s, total variation %s', state.d, check.max_difference,
                     check.total_variation)
    return check


# Energy


def _global_hamiltonian(state, H_C, H_R):
    H_C = _hermitian('H_C', H_C, state.d)
    H_R = _hermitian('H_R', H_R, state.d)
    identity = np.eye(state.d)
    return np.kron(H_C, identity) + np.kron(identity, H_R)


def hamiltonian_balance(state, H_C, H_R):
    """Expectation of H_C (x) 1 + 1 (x) H_R in the global state"""
    psi = state.vector
    return float(np.vdot(psi, _global_hamiltonian(state, H_C, H_R) @ psi).real)


def global_stationarity_defect(state, H_C, H_R):
    """Max-norm of the commutator of the global density matrix with the total Hamiltonian"""
    psi = state.vector
    rho = np.outer(psi, psi.conj())
    H = _global_hamiltonian(state, H_C, H_R)
    return float(np.max(np.abs(H @ rho - rho @ H)))
