"""
Two-level state primitives

Pure states, density matrices and unitaries of the qubit clock, kept as immutable values. Density matrices store
the real diagonal and the upper off-diagonal entry only, so a DensityMatrix2 is Hermitian by construction
"""

import cmath
import collections
import math

import numpy as np

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as helper


# Exceptions


class InvalidState(exceptions.DClockException):
    """Exception class for states violating normalization, trace or positivity requirements"""
    pass


class NotUnitary(exceptions.DClockException):
    """Exception class for matrices that are expected to be unitary but are not"""
    pass


# Module Variables


# Defects of a density matrix as reported by 'validate_density'
DensityDiagnostics = collections.namedtuple('DensityDiagnostics', 'trace_defect hermiticity_defect min_eigenvalue')

SIGMA_X = helper.readonly_array([[0, 1], [1, 0]])
SIGMA_Z = helper.readonly_array([[1, 0], [0, -1]])
IDENTITY = helper.readonly_array([[1, 0], [0, 1]])


# Types


@helper.frozen
class PureState2:
    """State c1|1> + c2|2> of the clock, |1> being the ground and |2> the excited level"""

    def __init__(self, c1, c2):
        self.c1 = complex(c1)
        self.c2 = complex(c2)

    @property
    def norm_defect(self):
        return abs(abs(self.c1) ** 2 + abs(self.c2) ** 2 - 1)

    def as_vector(self):
        return np.array([self.c1, self.c2], dtype=complex)

    def __repr__(self):
        return "{}(c1={}, c2={})".format(type(self).__name__, self.c1, self.c2)


@helper.frozen
class DensityMatrix2:
    """
    2x2 density matrix stored as (rho11, rho22, rho12)
    - The diagonal is real and rho21 is always the conjugate of rho12
    - Trace and positivity are not enforced on construction, see 'validate_density' and 'require_valid'
    """

    def __init__(self, rho11, rho22, rho12):
        self.rho11 = float(np.real(rho11))
        self.rho22 = float(np.real(rho22))
        self.rho12 = complex(rho12)

    @property
    def rho21(self):
        return self.rho12.conjugate()

    @staticmethod
    def from_matrix(matrix):
        """Build from a 2x2 array using its real diagonal and upper off-diagonal entry"""
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidState('Expected a 2x2 matrix, got shape {}'.format(m.shape))
        return DensityMatrix2(m[0, 0].real, m[1, 1].real, m[0, 1])

    @staticmethod
    def ground():
        return DensityMatrix2(1.0, 0.0, 0.0)

    @staticmethod
    def excited():
        return DensityMatrix2(0.0, 1.0, 0.0)

    def as_matrix(self):
        return np.array([[self.rho11, self.rho12], [self.rho21, self.rho22]], dtype=complex)

    def eigenvalues(self):
        """Closed-form eigenvalues of a Hermitian 2x2 matrix, ascending"""
        mean = 0.5 * (self.rho11 + self.rho22)
        radius = math.hypot(0.5 * (self.rho11 - self.rho22), abs(self.rho12))
        return mean - radius, mean + radius

    def __repr__(self):
        return "{}(rho11={}, rho22={}, rho12={})".format(type(self).__name__, self.rho11, self.rho22, self.rho12)


@helper.frozen
class Unitary2:
    """2x2 complex matrix expected to be unitary; the defect is exposed rather than enforced"""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise NotUnitary('Expected a 2x2 matrix, got shape {}'.format(m.shape))
        self.matrix = helper.readonly_array(m)

    @property
    def unitarity_defect(self):
        """Max-norm of U^dagger U - I"""
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - IDENTITY)))

    def __matmul__(self, other):
        return Unitary2(self.matrix @ other.matrix)

    def __repr__(self):
        return "{}({})".format(type(self).__name__, self.matrix.tolist())


# Operations


def dm_from_pure(psi):
    """Density matrix |psi><psi| of a normalized pure state"""
    if psi.norm_defect > config.EVOLUTION_TOLERANCE:
        raise InvalidState('Pure state is not normalized (norm defect {:.3e})'.format(psi.norm_defect))
    return DensityMatrix2(abs(psi.c1) ** 2, abs(psi.c2) ** 2, psi.c1 * psi.c2.conjugate())


def apply_unitary(rho, unitary):
    """Conjugate a density matrix: U rho U^dagger"""
    defect = unitary.unitarity_defect
    if defect > config.EVOLUTION_TOLERANCE:
        raise NotUnitary('Unitarity defect {:.3e} exceeds {:.1e}'.format(defect, config.EVOLUTION_TOLERANCE))
    u = unitary.matrix
    return DensityMatrix2.from_matrix(u @ rho.as_matrix() @ u.conj().T)


def validate_density(rho):
    """
    Report the trace defect, hermiticity defect and minimum eigenvalue of a density matrix
    Accepts a DensityMatrix2 (hermiticity defect is zero by construction) or a raw 2x2 array
    """
    if isinstance(rho, DensityMatrix2):
        return DensityDiagnostics(abs(rho.rho11 + rho.rho22 - 1), 0.0, rho.eigenvalues()[0])
    m = np.asarray(rho, dtype=complex)
    hermiticity_defect = float(np.max(np.abs(m - m.conj().T)))
    trace_defect = abs(complex(np.trace(m)) - 1)
    min_eigenvalue = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
    return DensityDiagnostics(trace_defect, hermiticity_defect, min_eigenvalue)


def require_valid(rho, tolerance=config.EVOLUTION_TOLERANCE):
    """Raise InvalidState unless 'rho' has unit trace and no eigenvalue below -tolerance"""
    diagnostics = validate_density(rho)
    if diagnostics.trace_defect > tolerance:
        raise InvalidState('Trace defect {:.3e} exceeds {:.1e}'.format(diagnostics.trace_defect, tolerance))
    if diagnostics.min_eigenvalue < -tolerance:
        raise InvalidState('Negative eigenvalue {:.3e}'.format(diagnostics.min_eigenvalue))
    return rho


def phase_rotation(phase):
    """Diagonal unitary diag(e^{i phase/2}, e^{-i phase/2}); conjugation multiplies rho12 by e^{i phase}"""
    return Unitary2([[cmath.exp(0.5j * phase), 0], [0, cmath.exp(-0.5j * phase)]])
