import cmath
import math
import unittest

import hypothesis
import hypothesis.strategies as st
import numpy as np

import dclock.helper as dclock_helper
import dclock.ramsey as ramsey
import dclock.statespace as statespace


def protocol(lam=1.0, theta=0.0, T=10.0, alpha=0.0, beta=0.0, omega21=0.0, tau=None):
    pulse = ramsey.PulseParams(lam, omega21 + theta, omega21, tau)
    return ramsey.RamseyProtocol(pulse, T, ramsey.DecoherenceSpec(alpha, beta))


def finite(low, high):
    return st.floats(min_value=low, max_value=high, allow_nan=False, allow_infinity=False)


class ParameterTests(unittest.TestCase):

    def test_defaults(self):
        pulse = ramsey.PulseParams(2.0, 3.0, 1.0)

        # tau defaults to pi / (4 lambda), theta and the Rabi frequency are derived
        self.assertAlmostEqual(math.pi / 8, pulse.tau)
        self.assertEqual(2.0, pulse.theta)
        self.assertAlmostEqual(math.sqrt(5), pulse.rabi)

        gamma = ramsey.DecoherenceSpec(0.5, -0.25)
        self.assertEqual(complex(0.5, -0.25), gamma.gamma)

    def test_invalid_parameters(self):
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.PulseParams(0.0, 0.0, 0.0)
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.PulseParams(1.0, float('nan'), 0.0)
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.PulseParams(1.0, 0.0, 0.0, tau=-1.0)
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.DecoherenceSpec(alpha=-0.1)
        with self.assertRaises(ramsey.InvalidParameter):
            protocol(T=-1.0)
        with self.assertRaises(ramsey.InvalidParameter):
            protocol(T=0.0)
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.rabi_frequency(-1.0, 0.0)

    def test_frozen(self):
        p = protocol()
        with self.assertRaises(dclock_helper.Disallowed):
            p.T = 5

    def test_with_omega(self):
        p = protocol(theta=0.5, omega21=2.0).with_omega(1.0)
        self.assertEqual(-1.0, p.pulse.theta)
        self.assertEqual(2.0, p.pulse.omega21)

    def test_diagnostics(self):
        # Pulses longer than a tenth of the Ramsey time are flagged
        self.assertTrue(protocol(T=1.0).diagnostics().long_pulse)
        self.assertFalse(protocol(T=10.0).diagnostics().long_pulse)
        self.assertAlmostEqual(math.pi / 40, protocol(T=10.0).diagnostics().tau_over_t)


class PulseTests(unittest.TestCase):

    @hypothesis.given(finite(0.01, 100), finite(-100, 100), finite(0, 10), finite(-10, 10))
    def test_pulse_is_unitary(self, lam, theta, t, phase):
        self.assertLess(ramsey.pulse_unitary(lam, theta, t, phase).unitarity_defect, 1e-12)

    def test_unitarity_draws(self):
        rng = np.random.default_rng(2024)
        draws = zip(rng.uniform(0.01, 100, 10 ** 4), rng.uniform(-100, 100, 10 ** 4), rng.uniform(0, 10, 10 ** 4),
                    rng.uniform(-10, 10, 10 ** 4))
        worst = max(ramsey.pulse_unitary(lam, theta, t, phase).unitarity_defect for lam, theta, t, phase in draws)
        self.assertLessEqual(worst, 1e-12)

    def test_resonant_half_pulse(self):
        rho = statespace.apply_unitary(statespace.DensityMatrix2.ground(),
                                       ramsey.pulse_unitary(1.0, 0.0, math.pi / 4))

        # A pi/(4 lambda) pulse on resonance produces an equal superposition
        self.assertAlmostEqual(0.5, rho.rho22, places=14)
        self.assertAlmostEqual(0.5, abs(rho.rho12), places=14)

    def test_rabi_probability(self):
        self.assertAlmostEqual(1.0, ramsey.rabi_excitation_probability(1.0, 0.0, math.pi / 2), places=14)
        self.assertAlmostEqual(math.sqrt(2), ramsey.rabi_frequency(1.0, 2.0))

        # Off resonance the excitation never exceeds (lambda / Omega)^2
        self.assertAlmostEqual(0.5, ramsey.rabi_excitation_probability(1.0, 2.0, math.pi / (2 * math.sqrt(2))))

        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.rabi_excitation_probability(1.0, 0.0, -1.0)

    def test_lab_pulse_matches_rotating_frame(self):
        pulse = ramsey.PulseParams(1.3, 2.1, 1.7)
        t_start = 0.9
        rho = statespace.DensityMatrix2(0.6, 0.4, 0.2 + 0.3j)

        lab = statespace.apply_unitary(rho, ramsey.pulse_propagator(pulse, t_start))
        rotating = statespace.apply_unitary(ramsey.to_lab_frame(rho, pulse.omega, -t_start),
                                            ramsey.pulse_unitary(pulse.lam, pulse.theta, pulse.tau))
        expected = ramsey.to_lab_frame(rotating, pulse.omega, t_start + pulse.tau)

        # The lab-frame pulse is the rotating-frame pulse seen from the lab
        self.assertAlmostEqual(expected.rho22, lab.rho22, places=13)
        self.assertAlmostEqual(expected.rho12, lab.rho12, places=13)


class FreeEvolutionTests(unittest.TestCase):

    def test_dephasing(self):
        rho = statespace.DensityMatrix2(0.5, 0.5, 0.5)
        out = ramsey.free_evolution(rho, 2.0, ramsey.DecoherenceSpec(0.25, 0.5), 1.0)

        # Populations are untouched, the coherence decays and rotates at omega21 + beta
        self.assertEqual((0.5, 0.5), (out.rho11, out.rho22))
        self.assertAlmostEqual(0.5 * math.exp(-0.5), abs(out.rho12), places=15)
        self.assertAlmostEqual(math.remainder(3.0, 2 * math.pi), math.atan2(out.rho12.imag, out.rho12.real),
                               places=13)

    def test_zero_time(self):
        rho = statespace.DensityMatrix2(0.5, 0.5, 0.5)
        self.assertIs(rho, ramsey.free_evolution(rho, 0.0, ramsey.DecoherenceSpec(1.0), 3.0))

    def test_invalid(self):
        rho = statespace.DensityMatrix2.ground()
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.free_evolution(rho, -1.0, ramsey.DecoherenceSpec(), 0.0)

    def test_lab_frame(self):
        rho = statespace.DensityMatrix2(0.3, 0.7, 0.1 - 0.4j)
        lab = ramsey.to_lab_frame(rho, 2.5, 1.5)

        # Only the coherence turns, by omega t
        self.assertEqual((0.3, 0.7), (lab.rho11, lab.rho22))
        self.assertAlmostEqual(abs(rho.rho12), abs(lab.rho12), places=15)
        self.assertAlmostEqual(rho.rho12 * cmath.exp(3.75j), lab.rho12, places=15)

        # Running the clock backwards undoes the rotation
        self.assertAlmostEqual(rho.rho12, ramsey.to_lab_frame(lab, 2.5, -1.5).rho12, places=14)


class ExcitationProbabilityTests(unittest.TestCase):

    def test_ideal_ramsey(self):
        # Resonant sequence without dephasing ends in the excited state
        for lam in (0.5, 1.0, 10.0):
            for T in (1.0, 10.0, 37.5):
                self.assertAlmostEqual(1.0, ramsey.excitation_probability_full(protocol(lam=lam, T=T)), delta=1e-8)

    def test_fringe_sign(self):
        self.assertEqual(1, ramsey.FRINGE_SIGN)

    def test_resonant_dephasing(self):
        # On resonance the probability is exactly 1/2 (1 + e^{-alpha T} cos(beta T))
        for alpha_t in (0.25, 0.5, 1.0, 2.0):
            p = protocol(T=10.0, alpha=alpha_t / 10.0)
            self.assertAlmostEqual(0.5 * (1 + math.exp(-alpha_t)), ramsey.excitation_probability_full(p), delta=1e-12)

        p = protocol(T=10.0, alpha=0.1, beta=0.2)
        self.assertAlmostEqual(0.5 * (1 + math.exp(-1) * math.cos(2.0)), ramsey.excitation_probability_full(p),
                               delta=1e-12)

    @hypothesis.given(finite(0.1, 10), finite(-5, 5), finite(0, 2), finite(-2, 2), finite(0.1, 20), finite(-5, 5),
                      finite(0.1, 3))
    def test_closed_form(self, lam, theta, alpha, beta, T, omega21, tau_scale):
        p = protocol(lam, theta, T, alpha, beta, omega21, tau=tau_scale / lam)
        full = ramsey.excitation_probability_full(p)

        # Composition and closed form agree, and the result is a probability
        self.assertAlmostEqual(full, ramsey.excitation_probability_closed_form(p), delta=1e-11)
        self.assertGreaterEqual(full, -1e-12)
        self.assertLessEqual(full, 1 + 1e-12)

    def test_near_resonance_form(self):
        # With lambda much larger than the detuning the full probability approaches the fringe formula
        for theta, alpha, beta, T in ((0.3, 0.1, 0.0, 3.0), (-0.7, 0.0, 0.2, 5.0), (1.2, 0.5, -0.4, 2.0)):
            p = protocol(lam=1e4, theta=theta, T=T, alpha=alpha, beta=beta)
            self.assertAlmostEqual(ramsey.excitation_probability_resonant(theta, beta, alpha, T),
                                   ramsey.excitation_probability_full(p), delta=1e-3)

    def test_resonant_form(self):
        self.assertAlmostEqual(1.0, ramsey.excitation_probability_resonant(0.4, 0.4, 0.0, 7.0))
        self.assertAlmostEqual(0.0, ramsey.excitation_probability_resonant(math.pi, 0.0, 0.0, 1.0))
        self.assertAlmostEqual(0.5 * (1 + math.exp(-1)), ramsey.excitation_probability_resonant(0.0, 0.0, 0.5, 2.0))
        with self.assertRaises(ramsey.InvalidParameter):
            ramsey.excitation_probability_resonant(0.0, 0.0, -0.5, 2.0)

    def test_symmetric_lineshape(self):
        # Without a frequency shift the lineshape is symmetric about omega21
        for theta in (0.05, 0.3, 1.1):
            self.assertAlmostEqual(ramsey.excitation_probability_full(protocol(theta=theta, alpha=0.05)),
                                   ramsey.excitation_probability_full(protocol(theta=-theta, alpha=0.05)),
                                   delta=1e-12)

    def test_printed_formula(self):
        # The published formula does not reduce to the ideal result at tau = pi/(4 lambda)
        printed = ramsey.excitation_probability_printed(protocol())
        self.assertAlmostEqual(2 + 2 * math.sqrt(2), printed, places=12)
