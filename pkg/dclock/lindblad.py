"""
Master-equation oracle for the Ramsey sequence

Integrates d rho/dt = -i[H, rho] + sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}) with a fixed-step
fourth order Runge-Kutta scheme. Everything is integrated in the rotating frame of the drive: the pulses are time
independent there and the free interval only sees the detuning. Dephasing is realized as L = sqrt(alpha/2) sigma_z
with a Hamiltonian shift -(beta/2) sigma_z, which multiplies the coherence by e^{(i beta - alpha) t}.
"""

import collections
import math

import numpy as np

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as helper
import dclock.log_utils as log
import dclock.ramsey as ramsey
import dclock.statespace as statespace


# Exceptions


class NonHermitianHamiltonian(exceptions.DClockException):
    """Exception class for Hamiltonians that fail the hermiticity check"""
    pass


class StepLimitExceeded(exceptions.NumericalError):
    """Exception class for integrations needing more steps than allowed by the integrator configuration"""
    pass


# Module Variables


# Hamiltonian shift and jump operator realizing a dephasing eigenvalue
DephasingChannel = collections.namedtuple('DephasingChannel', 'h_shift jump')

# Outcome of an integration: final state, step data, worst defects seen and optional (t, rho11, rho22, rho12) rows
IntegrationResult = collections.namedtuple(
    'IntegrationResult', 'state steps dt max_trace_defect max_hermiticity_defect trajectory')

# Row of a recorded trajectory
TrajectoryPoint = collections.namedtuple('TrajectoryPoint', 't rho11 rho22 rho12')

# Flattened (row-major) basis of 2x2 matrices
_MATRIX_BASIS = [np.eye(1, 4, k, dtype=complex).reshape(2, 2) for k in range(4)]


# Types


@helper.frozen
class LindbladSystem:
    """Hamiltonian and jump operators of a two-level master equation"""

    def __init__(self, H, jump_ops=()):
        H = np.asarray(H, dtype=complex)
        defect = float(np.max(np.abs(H - H.conj().T)))
        if defect > config.CONSTRUCTION_TOLERANCE:
            raise NonHermitianHamiltonian('Hamiltonian hermiticity defect {:.3e}'.format(defect))
        self.H = helper.readonly_array(H)
        self.jump_ops = tuple(helper.readonly_array(op) for op in jump_ops)

    def with_channel(self, channel):
        """Add a dephasing channel: its shift to the Hamiltonian and its jump operator to the jump list"""
        return LindbladSystem(self.H + channel.h_shift, self.jump_ops + (channel.jump,))

    def __repr__(self):
        return "{}(H={}, jump_ops={})".format(
            type(self).__name__, self.H.tolist(), [op.tolist() for op in self.jump_ops])


@helper.frozen
class IntegratorConfig:
    """
    Fixed-step RK4 settings
    - dt: explicit step; when None every segment uses resolution / (fastest rate of its generator)
    - max_step_count: integrations needing more steps raise StepLimitExceeded
    - decohere_during_pulses: apply the dephasing channel during the pulses too (off by default)
    """
    method = 'rk4'

    def __init__(self, dt=None, resolution=config.INTEGRATOR_RESOLUTION, max_step_count=config.INTEGRATOR_MAX_STEPS,
                 decohere_during_pulses=False):
        if dt is not None and not dt > 0:
            raise ramsey.InvalidParameter('Integrator step dt must be positive, got {}'.format(dt))
        if not resolution > 0:
            raise ramsey.InvalidParameter('Integrator resolution must be positive, got {}'.format(resolution))
        if max_step_count < 1:
            raise ramsey.InvalidParameter('max_step_count must be positive, got {}'.format(max_step_count))
        self.dt = None if dt is None else float(dt)
        self.resolution = float(resolution)
        self.max_step_count = int(max_step_count)
        self.decohere_during_pulses = bool(decohere_during_pulses)

    def __repr__(self):
        return "{}(dt={}, resolution={}, max_step_count={}, decohere_during_pulses={})".format(
            type(self).__name__, self.dt, self.resolution, self.max_step_count, self.decohere_during_pulses)


# Generator


def _as_matrix(rho):
    return rho.as_matrix() if isinstance(rho, statespace.DensityMatrix2) else np.asarray(rho, dtype=complex)


def lindblad_rhs(rho, system):
    """Right hand side of the master equation for a density matrix 'rho' (DensityMatrix2 or 2x2 array)"""
    rho = _as_matrix(rho)
    H = system.H
    drho = -1j * (H @ rho - rho @ H)
    for jump in system.jump_ops:
        jump_dag = jump.conj().T
        decay = jump_dag @ jump
        drho = drho + jump @ rho @ jump_dag - 0.5 * (decay @ rho + rho @ decay)
    return drho


def liouvillian(system):
    """4x4 matrix of the master equation acting on row-major flattened density matrices"""
    return np.column_stack([lindblad_rhs(basis, system).reshape(4) for basis in _MATRIX_BASIS])


def dephasing_channel(alpha, beta):
    """Pure dephasing with decay rate 'alpha' and frequency shift 'beta' of the coherence"""
    if not np.isfinite(alpha) or not np.isfinite(beta):
        raise ramsey.InvalidParameter('Dephasing parameters must be finite, got alpha={} beta={}'.format(alpha, beta))
    if alpha < 0:
        raise ramsey.InvalidParameter('Dephasing rate alpha must be non-negative, got {}'.format(alpha))
    return DephasingChannel(-0.5 * beta * statespace.SIGMA_Z, math.sqrt(0.5 * alpha) * statespace.SIGMA_Z)


# Integration


def _rk4_propagator(generator, h):
    """One classical RK4 step of dv/dt = generator v, as a matrix"""
    identity = np.eye(4, dtype=complex)
    k1 = generator
    k2 = generator @ (identity + 0.5 * h * k1)
    k3 = generator @ (identity + 0.5 * h * k2)
    k4 = generator @ (identity + h * k3)
    return identity + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _step_plan(generator, t_final, cfg):
    """Number of steps and step size covering 't_final' exactly"""
    if cfg.dt is not None:
        dt = cfg.dt
    else:
        rate = float(np.max(np.abs(np.linalg.eigvals(generator))))
        dt = cfg.resolution / rate if rate > 0 else t_final
    steps = max(1, math.ceil(t_final / dt))
    if steps > cfg.max_step_count:
        raise StepLimitExceeded('Integration over t={} needs {} steps, limit is {}'.format(
            t_final, steps, cfg.max_step_count))
    return steps, t_final / steps


def _trajectory_point(t, v):
    return TrajectoryPoint(t, v[0].real, v[3].real, v[1])


def run_integrator(rho0, system, t_final, cfg=None, t_offset=0.0, record=False):
    """
    Integrate the master equation from 'rho0' over 't_final'
    :param rho0: Initial DensityMatrix2
    :param system: LindbladSystem
    :param t_final: Integration time (>= 0)
    :param cfg: IntegratorConfig, defaults apply when None
    :param t_offset: Time stamp of 'rho0' in recorded trajectories
    :param record: Collect a TrajectoryPoint after every step
    :return: IntegrationResult
    """
    cfg = IntegratorConfig() if cfg is None else cfg
    if not np.isfinite(t_final) or t_final < 0:
        raise ramsey.InvalidParameter('Integration time must be finite and non-negative, got {}'.format(t_final))
    v = rho0.as_matrix().reshape(4)
    trajectory = [_trajectory_point(t_offset, v)] if record else None
    if t_final == 0:
        return IntegrationResult(rho0, 0, 0.0, statespace.validate_density(rho0).trace_defect, 0.0, trajectory)

    generator = liouvillian(system)
    steps, h = _step_plan(generator, t_final, cfg)
    log.logger.debug('RK4: %d steps of %s over %s', steps, h, t_final)
    propagator = _rk4_propagator(generator, h)

    max_trace_defect = 0.0
    max_hermiticity_defect = 0.0
    for step in range(1, steps + 1):
        v = propagator @ v
        max_hermiticity_defect = max(max_hermiticity_defect, abs(v[1] - v[2].conjugate()))
        coherence = 0.5 * (v[1] + v[2].conjugate())
        v = np.array([v[0].real, coherence, coherence.conjugate(), v[3].real], dtype=complex)
        max_trace_defect = max(max_trace_defect, abs(v[0].real + v[3].real - 1))
        if record:
            trajectory.append(_trajectory_point(t_offset + step * h, v))

    if max_trace_defect > config.EVOLUTION_TOLERANCE:
        log.logger.warning('Trace defect %s exceeds %s', max_trace_defect, config.EVOLUTION_TOLERANCE)
    if max_hermiticity_defect > config.HERMITICITY_TOLERANCE:
        log.logger.warning('Hermiticity defect %s before symmetrization exceeds %s', max_hermiticity_defect,
                           config.HERMITICITY_TOLERANCE)
    state = statespace.DensityMatrix2(v[0].real, v[3].real, v[1])
    return IntegrationResult(state, steps, h, max_trace_defect, max_hermiticity_defect, trajectory)


def integrate_master(rho0, system, t_final, cfg=None):
    """Final state of a master-equation integration, see 'run_integrator'"""
    return run_integrator(rho0, system, t_final, cfg).state


# Ramsey sequence


def pulse_system(pulse):
    """Rotating-frame Hamiltonian of a pulse: [[theta/2, lam], [lam, -theta/2]]"""
    return LindbladSystem(0.5 * pulse.theta * statespace.SIGMA_Z + pulse.lam * statespace.SIGMA_X)


def free_system(pulse, gamma):
    """Rotating-frame free evolution: detuning term plus the dephasing channel"""
    bare = LindbladSystem(0.5 * pulse.theta * statespace.SIGMA_Z)
    return bare.with_channel(dephasing_channel(gamma.alpha, gamma.beta))


def simulate_ramsey_state(p, cfg=None, record=False):
    """
    Integrate pulse, free interval and pulse, and return the lab-frame state at t = 2 tau + T
    The returned IntegrationResult merges the three segments (steps summed, worst defects, concatenated trajectory
    in the rotating frame); its 'dt' is the step of the free interval
    """
    cfg = IntegratorConfig() if cfg is None else cfg
    pulse, gamma = p.pulse, p.gamma
    driven = pulse_system(pulse)
    if cfg.decohere_during_pulses:
        driven = driven.with_channel(dephasing_channel(gamma.alpha, gamma.beta))
    segments = [(driven, pulse.tau), (free_system(pulse, gamma), p.T), (driven, pulse.tau)]

    rho = statespace.DensityMatrix2.ground()
    t = 0.0
    results = []
    trajectory = [] if record else None
    for system, duration in segments:
        result = run_integrator(rho, system, duration, cfg, t_offset=t, record=record)
        if record:
            trajectory.extend(result.trajectory if not trajectory else result.trajectory[1:])
        results.append(result)
        rho = result.state
        t += duration

    state = ramsey.to_lab_frame(rho, pulse.omega, p.duration)
    return IntegrationResult(
        state,
        sum(r.steps for r in results),
        results[1].dt,
        max(r.max_trace_defect for r in results),
        max(r.max_hermiticity_defect for r in results),
        trajectory
    )


def simulate_ramsey_numeric(p, cfg=None):
    """Excited-state population after the full sequence, from the master equation"""
    return simulate_ramsey_state(p, cfg).state.rho22


def resolve_fringe_sign(cfg=None):
    """
    Sign of the fringe term of the near-resonance probability, decided by integrating the ideal resonant sequence
    :return: +1 when the ideal sequence ends in the excited state, -1 when it ends in the ground state
    """
    pulse = ramsey.PulseParams(lam=1.0, omega=0.0, omega21=0.0)
    p_ex = simulate_ramsey_numeric(ramsey.RamseyProtocol(pulse, T=1.0), cfg)
    log.logger.debug('Ideal resonant sequence from the master equation: P_ex=%s', p_ex)
    return 1 if p_ex > 0.5 else -1
