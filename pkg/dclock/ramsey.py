"""
Closed-form Ramsey interrogation of a dephasing two-level clock

The sequence is: pulse of length tau, free evolution for T under dephasing, second pulse of length tau. Pulses are
driven by an oscillator of frequency omega that keeps running during the free interval, so the second pulse starts
with the drive phase accumulated since t=0.

Conventions:
- Lab frame: the bare coherence rho12 rotates as e^{+i omega21 t}
- Rotating frame of the drive: rho12 is multiplied by e^{-i omega t}, the pulse Hamiltonian is time independent
- Dephasing multiplies the coherence by e^{(i beta - alpha) t}, so the central fringe sits at omega = omega21 + beta
"""

import cmath
import collections
import math

import numpy as np

import dclock.exceptions as exceptions
import dclock.helper as helper
import dclock.log_utils as log
import dclock.statespace as statespace


# Exceptions


class InvalidParameter(exceptions.DClockException):
    """Exception class for physical parameters outside their domain"""
    pass


# Module Variables


# Sign of the fringe term in P = 1/2 [1 + FRINGE_SIGN e^{-alpha T} cos((theta - beta) T)]
# Fixed by the master equation integration (see 'lindblad.resolve_fringe_sign'): ideal Ramsey peaks at resonance
FRINGE_SIGN = +1

# Pulses longer than this fraction of the Ramsey time are flagged
LONG_PULSE_FRACTION = 0.1

ProtocolDiagnostics = collections.namedtuple('ProtocolDiagnostics', 'long_pulse tau_over_t')


# Utils


def _require_finite(**values):
    for name, value in values.items():
        if not np.isfinite(value):
            raise InvalidParameter('{} must be finite, got {}'.format(name, value))


def _require_positive_lambda(lam):
    _require_finite(lam=lam)
    if lam <= 0:
        raise InvalidParameter('Drive amplitude lambda must be positive, got {}'.format(lam))


# Types


@helper.frozen
class PulseParams:
    """
    Drive parameters of a Ramsey pulse
    - theta (detuning) and rabi (Rabi frequency) are derived, never stored
    - tau defaults to the optimal pulse time pi/(4 lambda)
    """

    def __init__(self, lam, omega, omega21, tau=None):
        _require_positive_lambda(lam)
        _require_finite(omega=omega, omega21=omega21)
        tau = optimal_pulse_time(lam) if tau is None else tau
        _require_finite(tau=tau)
        if tau <= 0:
            raise InvalidParameter('Pulse duration tau must be positive, got {}'.format(tau))
        self.lam = float(lam)
        self.omega = float(omega)
        self.omega21 = float(omega21)
        self.tau = float(tau)

    @property
    def theta(self):
        return self.omega - self.omega21

    @property
    def rabi(self):
        return rabi_frequency(self.lam, self.theta)

    def with_omega(self, omega):
        return PulseParams(self.lam, omega, self.omega21, self.tau)

    def __repr__(self):
        return "{}(lam={}, omega={}, omega21={}, tau={})".format(
            type(self).__name__, self.lam, self.omega, self.omega21, self.tau)


@helper.frozen
class DecoherenceSpec:
    """Dephasing eigenvalue gamma = alpha + i beta of the coherences"""

    def __init__(self, alpha=0.0, beta=0.0):
        _require_finite(alpha=alpha, beta=beta)
        if alpha < 0:
            raise InvalidParameter('Dephasing rate alpha must be non-negative, got {}'.format(alpha))
        self.alpha = float(alpha)
        self.beta = float(beta)

    @property
    def gamma(self):
        return complex(self.alpha, self.beta)

    def __repr__(self):
        return "{}(alpha={}, beta={})".format(type(self).__name__, self.alpha, self.beta)


@helper.frozen
class RamseyProtocol:
    """Two pulses separated by a Ramsey time T, starting from the ground state at t=0"""

    def __init__(self, pulse, T, gamma=None):
        _require_finite(T=T)
        if T <= 0:
            raise InvalidParameter('Ramsey time T must be positive, got {}'.format(T))
        self.pulse = pulse
        self.T = float(T)
        self.gamma = DecoherenceSpec() if gamma is None else gamma

    @property
    def duration(self):
        return 2 * self.pulse.tau + self.T

    def with_omega(self, omega):
        return RamseyProtocol(self.pulse.with_omega(omega), self.T, self.gamma)

    def diagnostics(self):
        """Flags pulses that are not short compared to the Ramsey time (tau > T/10)"""
        ratio = self.pulse.tau / self.T
        return ProtocolDiagnostics(ratio > LONG_PULSE_FRACTION, ratio)

    def __repr__(self):
        return "{}(pulse={}, T={}, gamma={})".format(type(self).__name__, self.pulse, self.T, self.gamma)


# Pulses


def rabi_frequency(lam, theta):
    """Rabi frequency sqrt(lambda^2 + theta^2/4)"""
    _require_positive_lambda(lam)
    _require_finite(theta=theta)
    return math.hypot(lam, 0.5 * theta)


def optimal_pulse_time(lam):
    """Pulse time pi/(4 lambda) giving unit excitation for the ideal resonant sequence"""
    _require_positive_lambda(lam)
    return math.pi / (4 * lam)


def pulse_unitary(lam, theta, t, drive_phase=0.0):
    """
    Rotating-frame propagator of a pulse of length 't'
    :param lam: Drive amplitude
    :param theta: Detuning omega - omega21
    :param t: Pulse duration
    :param drive_phase: Phase of the drive at the start of the pulse
    :return: Unitary2 [[b - i theta a/(2 Omega), -i lam e^{i phi} a/Omega],
                      [-i lam e^{-i phi} a/Omega, b + i theta a/(2 Omega)]]
    """
    _require_finite(t=t, drive_phase=drive_phase)
    if t < 0:
        raise InvalidParameter('Pulse duration must be non-negative, got {}'.format(t))
    rabi = rabi_frequency(lam, theta)
    a, b = math.sin(rabi * t), math.cos(rabi * t)
    diagonal = 0.5j * theta * a / rabi
    coupling = -1j * lam * a / rabi
    phase = cmath.exp(1j * drive_phase)
    return statespace.Unitary2([
        [b - diagonal, coupling * phase],
        [coupling * phase.conjugate(), b + diagonal]
    ])


def pulse_propagator(pulse, t_start):
    """
    Lab-frame propagator of a pulse starting at 't_start'
    The drive phase at the start is omega * t_start and the frame rotation over the pulse restores the lab phase
    """
    rotating = pulse_unitary(pulse.lam, pulse.theta, pulse.tau, drive_phase=pulse.omega * t_start)
    return statespace.phase_rotation(pulse.omega * pulse.tau) @ rotating


def to_lab_frame(rho, omega, t):
    """Coherence of a state given in the frame of a drive at frequency 'omega', seen from the lab at time 't'"""
    return statespace.DensityMatrix2(rho.rho11, rho.rho22, rho.rho12 * cmath.exp(1j * omega * t))


# Free evolution


def free_evolution(rho, T, gamma, omega21):
    """
    Lab-frame free evolution under dephasing
    Populations are passed through untouched; rho12 is multiplied by e^{(i (omega21 + beta) - alpha) T}
    """
    _require_finite(T=T, omega21=omega21)
    if T < 0:
        raise InvalidParameter('Free evolution time must be non-negative, got {}'.format(T))
    if gamma.alpha < 0:
        raise InvalidParameter('Dephasing rate alpha must be non-negative, got {}'.format(gamma.alpha))
    if T == 0:
        return rho
    factor = cmath.exp(complex(-gamma.alpha * T, (omega21 + gamma.beta) * T))
    return statespace.DensityMatrix2(rho.rho11, rho.rho22, rho.rho12 * factor)


# Sequence


def ramsey_sequence(p):
    """Lab-frame density matrix at t = 2 tau + T, starting from the ground state"""
    diagnostics = p.diagnostics()
    if diagnostics.long_pulse:
        log.logger.debug('Long pulse: tau/T = %s', diagnostics.tau_over_t)
    pulse = p.pulse
    rho = statespace.apply_unitary(statespace.DensityMatrix2.ground(), pulse_propagator(pulse, 0.0))
    rho = free_evolution(rho, p.T, p.gamma, pulse.omega21)
    return statespace.require_valid(statespace.apply_unitary(rho, pulse_propagator(pulse, pulse.tau + p.T)))


def excitation_probability_full(p):
    """Excited-state population after the full sequence, from the composed propagators"""
    return ramsey_sequence(p).rho22


def excitation_probability_closed_form(p):
    """
    Closed form of 'excitation_probability_full':
    2 (lam/Omega)^2 a^2 [b^2 + c^2 a^2 + e^{-alpha T} ((b^2 - c^2 a^2) cos(Phi) - 2 c a b sin(Phi))]
    with a = sin(Omega tau), b = cos(Omega tau), c = theta / (2 Omega) and Phi = (theta - beta) T
    """
    pulse, gamma = p.pulse, p.gamma
    rabi = pulse.rabi
    a, b = math.sin(rabi * pulse.tau), math.cos(rabi * pulse.tau)
    c = pulse.theta / (2 * rabi)
    phi = (pulse.theta - gamma.beta) * p.T
    envelope = math.exp(-gamma.alpha * p.T)
    fringe = (b * b - c * c * a * a) * math.cos(phi) - 2 * c * a * b * math.sin(phi)
    return 2 * (pulse.lam / rabi) ** 2 * a * a * (b * b + c * c * a * a + envelope * fringe)


def excitation_probability_printed(p):
    """
    Literal transcription of the published full-sequence formula, for comparison output only
    It does not reduce to 1 for the ideal resonant sequence
    """
    pulse, gamma = p.pulse, p.gamma
    rabi, theta = pulse.rabi, pulse.theta
    a, b = math.sin(rabi * pulse.tau), math.cos(rabi * pulse.tau)
    phi = (theta - gamma.beta) * p.T
    envelope = math.exp(-gamma.alpha * p.T)
    bracket = (
        2 * b + theta ** 2 / (2 * rabi ** 2) * a * a
        + envelope * (
            2 * b * b * math.cos(phi)
            - theta / (2 * rabi ** 2) * a * a * math.cos(phi)
            - 2 * theta / (4 * rabi) * math.sin(2 * rabi * pulse.tau) * math.sin(phi)
        )
    )
    return 4 * pulse.lam ** 2 / rabi ** 2 * a * a * bracket


def excitation_probability_resonant(theta, beta, alpha, T):
    """Near-resonance probability at tau = pi/(4 lambda): 1/2 [1 + FRINGE_SIGN e^{-alpha T} cos((theta - beta) T)]"""
    _require_finite(theta=theta, beta=beta, alpha=alpha, T=T)
    if alpha < 0:
        raise InvalidParameter('Dephasing rate alpha must be non-negative, got {}'.format(alpha))
    if T < 0:
        raise InvalidParameter('Ramsey time T must be non-negative, got {}'.format(T))
    return 0.5 * (1 + FRINGE_SIGN * math.exp(-alpha * T) * math.cos((theta - beta) * T))


def rabi_excitation_probability(lam, theta, t):
    """Single-pulse (Rabi method) excitation from the ground state: (lam/Omega)^2 sin^2(Omega t)"""
    _require_finite(t=t)
    if t < 0:
        raise InvalidParameter('Pulse duration must be non-negative, got {}'.format(t))
    rabi = rabi_frequency(lam, theta)
    return (lam / rabi) ** 2 * math.sin(rabi * t) ** 2
