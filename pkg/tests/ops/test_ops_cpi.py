import unittest

import numpy as np

import dclock.cpi as cpi


class TestCPIOps(unittest.TestCase):

    def test_clock_energies_pair_the_remainder(self):
        # The command pairs the remainder with the diagonal of the default clock Hamiltonian
        for d in (2, 5, 8):
            state = cpi.build_entangled_state(d)
            clock = cpi.default_clock(d, omega=0.5)
            energies = clock.H_C.diagonal().real
            np.testing.assert_allclose(0.5 * np.arange(d), energies)

            H_C, H_R = cpi.paired_hamiltonians(state, energies)
            np.testing.assert_allclose(-H_C, H_R, atol=1e-15)
            self.assertAlmostEqual(0.0, cpi.global_stationarity_defect(state, H_C, H_R), delta=1e-12)
