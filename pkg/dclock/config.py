import os

DCLOCK_ROOT_DIR = os.path.expanduser('~/.dclock')

# Logging
LOG_DIR_ENV_VAR = 'DCLOCK_LOG_DIR'
LOG_DIR_DEFAULT = os.path.join(DCLOCK_ROOT_DIR, 'logs')
LOG_FILE_NAME = 'dclock.log'
LOG_LEVEL_FILE = 'DEBUG'

# Rotating file logging
LOG_FILE_MAX_SIZE = 10 * 1024 * 1024
LOG_FILE_NUM_BACKUPS = 10

# Parallel evaluation of scans and sweeps
THREADS_ENV_VAR = 'DCLOCK_THREADS'

# State tolerances
CONSTRUCTION_TOLERANCE = 1e-12
EVOLUTION_TOLERANCE = 1e-9

# Integrator
# Step size as a fraction of the fastest timescale of the generator
INTEGRATOR_RESOLUTION = 1e-3
INTEGRATOR_MAX_STEPS = 10 ** 7
HERMITICITY_TOLERANCE = 1e-11

# Lineshape
FWHM_MIN_POINTS = 32
# Below this lam T the condition theta << lam fails across the central fringe and widths drift from pi/T
FWHM_MIN_LAMBDA_T = 1e3
MIN_CONTRAST = 1e-6
DEFAULT_FRINGE_PERIODS = 2
DEFAULT_GRID_COUNT = 1025

# Optimizer
RESIDUAL_TOLERANCE = 1e-9
POLE_TOLERANCE = 1e-9
ORDER_UNITY_BAND = (0.1, 10.0)
DEFAULT_ALPHA_T_BRACKET = (0.01, 20.0)
DEFAULT_BRACKET_SUBDIVISIONS = 2000
DEFAULT_ALPHA_GRID = (0.5, 1.0, 2.0)
DEFAULT_LAMBDA_MAGNITUDES = (0.1, 10.0, 9)

# CPI
CPI_MIN_DIMENSION = 2
CPI_MAX_DIMENSION = 8
CPI_QUADRATURE_POINTS = 512

# CLI
CLI_OUTPUT_PREFIX = '>> '
CLI_ORACLE_TOLERANCE = 1e-5
CONFIG_COMMON_SECTION = 'common'

# Tests
TEST_DIR = os.path.join(DCLOCK_ROOT_DIR, 'tests')
