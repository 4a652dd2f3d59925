"""
Run configuration of the CLI commands

Values are resolved in increasing priority from the field defaults, the [common] section of an INI file, the
section named after the command and finally command line flags. Every value is parsed and validated here, and
validation errors name the field and where its value came from.
"""

import collections
import configparser
import math
import os

import numpy as np

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.file_system as fs
import dclock.helper as helper
import dclock.lindblad as lindblad
import dclock.lineshape as lineshape
import dclock.ramsey as ramsey


# Module Variables


# Parser from text, default value, validator returning an error message (or None) and flag help
Field = collections.namedtuple('Field', 'parse default validate help')

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


# Parsers


def _float(text):
    return float(text)


def _optional_float(text):
    return None if text.strip().lower() in ('', 'none') else float(text)


def _auto_float(text):
    return None if text.strip().lower() == 'auto' else float(text)


def _int(text):
    return int(text)


def _bool(text):
    value = text.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError('expected one of {}'.format(_TRUE + _FALSE))


def _text(text):
    return text.strip()


def _path(text):
    return None if text.strip() == '' else fs.expand_path(text.strip())


def _float_list(text):
    return tuple(float(item) for item in text.split(',') if item.strip() != '')


def _optional_float_list(text):
    return None if text.strip().lower() in ('', 'default') else _float_list(text)


def _int_list(text):
    return tuple(int(item) for item in text.split(',') if item.strip() != '')


# Validators


def _finite(value):
    return None if math.isfinite(value) else 'must be finite'


def _positive(value):
    return None if math.isfinite(value) and value > 0 else 'must be positive'


def _non_negative(value):
    return None if math.isfinite(value) and value >= 0 else 'must be non-negative'


def _optional_positive(value):
    return None if value is None else _positive(value)


def _optional(validate):
    return lambda value: None if value is None else validate(value)


def _at_least(low):
    return lambda value: None if value >= low else 'must be at least {}'.format(low)


def _within(low, high):
    return lambda value: None if low <= value <= high else 'must lie in [{}, {}]'.format(low, high)


def _one_of(*choices):
    return lambda value: None if value in choices else 'must be one of {}'.format(', '.join(choices))


def _all(validate):
    def validator(values):
        if len(values) == 0:
            return 'must not be empty'
        for value in values:
            message = validate(value)
            if message is not None:
                return '{} ({})'.format(message, value)
        return None

    return validator


def _branch(value):
    return None if value in (1, -1) else 'must be 1 or -1'


def _writable(path):
    if path is None:
        return None
    return None if os.path.isdir(os.path.dirname(path)) else 'directory does not exist'


# Fields


FIELDS = {
    # Physical parameters
    'lam': Field(_float, 1.0, _positive, 'Drive amplitude lambda'),
    'omega21': Field(_float, 0.0, _finite, 'Atomic transition frequency'),
    'theta': Field(_float, 0.0, _finite, 'Detuning of the drive, omega - omega21'),
    'tau': Field(_auto_float, None, _optional_positive, 'Pulse duration or "auto" for pi/(4 lambda)'),
    'T': Field(_float, 10.0, _positive, 'Ramsey time'),
    'alpha': Field(_float, 0.0, _non_negative, 'Dephasing rate'),
    'beta': Field(_float, 0.0, _finite, 'Dephasing frequency shift'),
    # Integrator
    'resolution': Field(_float, config.INTEGRATOR_RESOLUTION, _positive, 'Integrator steps per fastest timescale'),
    'dt': Field(_optional_float, None, _optional_positive, 'Fixed integrator step (overrides resolution)'),
    'max_steps': Field(_int, config.INTEGRATOR_MAX_STEPS, _at_least(1), 'Maximum integrator steps per segment'),
    'decohere_pulses': Field(_bool, False, None, 'Apply dephasing during the pulses too'),
    # Scans
    'source': Field(_text, 'analytic', _one_of('analytic', 'oracle', 'both'), 'Probability source'),
    'grid_min': Field(_optional_float, None, _optional(_finite), 'Lowest drive frequency of the scan'),
    'grid_max': Field(_optional_float, None, _optional(_finite), 'Highest drive frequency of the scan'),
    'grid_count': Field(_int, config.DEFAULT_GRID_COUNT, _at_least(2), 'Number of scan points'),
    'periods': Field(_float, config.DEFAULT_FRINGE_PERIODS, _positive,
                     'Fringe periods spanned by a centred grid (when grid bounds are not given)'),
    'decay_points': Field(_int, 0, _at_least(0), 'Number of alpha*T values of the contrast decay table'),
    'decay_max': Field(_float, 2.0, _positive, 'Largest alpha*T of the contrast decay table'),
    'decay_output': Field(_path, None, _writable, 'CSV file of the contrast decay table'),
    'decay_plot': Field(_path, None, _writable, 'SVG plot of the contrast decay'),
    # Sweep
    'alphas': Field(_float_list, config.DEFAULT_ALPHA_GRID, _all(_positive), 'Comma separated dephasing rates'),
    'lambdas': Field(_optional_float_list, None, _optional(_all(_finite)),
                     'Comma separated Lagrange multipliers or "default"'),
    'branches': Field(_int_list, (1, -1), _all(_branch), 'Comma separated signs of Theta = +-alpha'),
    'bracket_low': Field(_float, config.DEFAULT_ALPHA_T_BRACKET[0], _positive, 'Lowest alpha*T searched'),
    'bracket_high': Field(_float, config.DEFAULT_ALPHA_T_BRACKET[1], _positive, 'Highest alpha*T searched'),
    'subdivisions': Field(_int, config.DEFAULT_BRACKET_SUBDIVISIONS, _at_least(1), 'Sub-brackets searched'),
    # Conditional probabilities
    'dimension': Field(_int, 2, _within(config.CPI_MIN_DIMENSION, config.CPI_MAX_DIMENSION), 'Clock dimension d'),
    'clock_omega': Field(_float, 1.0, _positive, 'Level spacing of the clock Hamiltonian'),
    'product': Field(_bool, False, None, 'Use an unentangled product state'),
    'points': Field(_int, config.CPI_QUADRATURE_POINTS, _at_least(2), 'Quadrature points per clock period'),
    # Output
    'output': Field(_path, None, _writable, 'Result file'),
    'format': Field(_text, 'csv', _one_of('csv', 'json', 'svg'), 'Format of the result file'),
    'plot': Field(_path, None, _writable, 'Additional SVG plot'),
    'trajectory': Field(_path, None, _writable, 'CSV file of the master-equation trajectory'),
}

_PHYSICAL = ('lam', 'omega21', 'theta', 'tau', 'T', 'alpha', 'beta')
_INTEGRATOR = ('resolution', 'dt', 'max_steps', 'decohere_pulses')
_SCAN = _PHYSICAL + _INTEGRATOR + ('source', 'grid_min', 'grid_max', 'grid_count', 'periods', 'output', 'format',
                                   'plot')

COMMAND_FIELDS = {
    'ramsey': _PHYSICAL + _INTEGRATOR + ('output', 'format', 'trajectory'),
    'scan': _SCAN,
    'fwhm': _SCAN + ('decay_points', 'decay_max', 'decay_output', 'decay_plot'),
    'optimize': ('alphas', 'lambdas', 'branches', 'bracket_low', 'bracket_high', 'subdivisions', 'output', 'format',
                 'plot'),
    'cpi': ('dimension', 'clock_omega', 'product', 'points', 'output', 'format'),
}

# Result file formats each command can write
COMMAND_FORMATS = {
    'ramsey': ('csv', 'json'),
    'scan': ('csv', 'json', 'svg'),
    'fwhm': ('csv', 'json', 'svg'),
    'optimize': ('csv', 'json', 'svg'),
    'cpi': ('csv', 'json'),
}


# Run configuration


def flag_name(field):
    return '--' + field.replace('_', '-')


@helper.frozen
class RunConfig:
    """Validated values of one command run, readable as attributes"""

    def __init__(self, command, values, origins):
        self.command = command
        self.values = dict(values)
        self.origins = dict(origins)

    def __getattr__(self, name):
        values = self.__dict__.get('values', {})
        if name in values:
            return values[name]
        raise AttributeError(name)

    def protocol(self):
        try:
            pulse = ramsey.PulseParams(self.lam, self.omega21 + self.theta, self.omega21, self.tau)
            return ramsey.RamseyProtocol(pulse, self.T, ramsey.DecoherenceSpec(self.alpha, self.beta))
        except ramsey.InvalidParameter as ex:
            raise exceptions.CLIValidationException(str(ex))

    def integrator(self):
        try:
            return lindblad.IntegratorConfig(self.dt, self.resolution, self.max_steps, self.decohere_pulses)
        except ramsey.InvalidParameter as ex:
            raise exceptions.CLIValidationException(str(ex))

    def omega_grid(self, protocol):
        """Explicit grid bounds when both are given, otherwise a grid centred on the central fringe"""
        if self.grid_min is not None and self.grid_max is not None:
            return np.linspace(self.grid_min, self.grid_max, self.grid_count)
        return lineshape.centered_grid(protocol, self.grid_count, self.periods)

    def sources(self):
        return lineshape.SOURCES if self.source == 'both' else (self.source,)

    @property
    def bracket(self):
        return self.bracket_low, self.bracket_high

    def __repr__(self):
        return "{}(command={}, values={})".format(type(self).__name__, self.command, self.values)


def _invalid(field, origin, message):
    return exceptions.CLIValidationException('Field "{}" ({}): {}'.format(field, origin, message))


def _read_file(path, command):
    """Raw values of the [common] section and of the command section, with their origins"""
    path = fs.expand_path(path)
    if not os.path.isfile(path):
        raise exceptions.CLIValidationException('Config file not found: "{}"'.format(path))
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read(path)
    except configparser.Error as ex:
        raise exceptions.CLIValidationException('Malformed config file "{}": {}'.format(path, ex))

    raw = {}
    for section in (config.CONFIG_COMMON_SECTION, command):
        if not parser.has_section(section):
            continue
        for key, value in parser.items(section):
            if key not in FIELDS:
                raise _invalid(key, '{} [{}]'.format(path, section), 'unknown field')
            if section == command and key not in COMMAND_FIELDS[command]:
                raise _invalid(key, '{} [{}]'.format(path, section), 'not used by "{}"'.format(command))
            if key in COMMAND_FIELDS[command]:
                raw[key] = (value, '{} [{}]'.format(path, section))
    return raw


def load(command, path=None, overrides=None):
    """
    Resolve the configuration of 'command'
    :param command: Command name, a key of COMMAND_FIELDS
    :param path: Optional INI file
    :param overrides: Dictionary of field name to flag text; None values are ignored
    :return: RunConfig
    """
    names = COMMAND_FIELDS[command]
    raw = {} if path is None else _read_file(path, command)
    for name, text in (overrides or {}).items():
        if text is not None and name in names:
            raw[name] = (text, 'flag {}'.format(flag_name(name)))

    values, origins = {}, {}
    for name in names:
        field = FIELDS[name]
        if name in raw:
            text, origin = raw[name]
            try:
                value = field.parse(text)
            except ValueError as ex:
                raise _invalid(name, origin, 'cannot parse "{}": {}'.format(text, ex))
        else:
            value, origin = field.default, 'default'
        message = None if field.validate is None else field.validate(value)
        if message is not None:
            raise _invalid(name, origin, '{}, got {}'.format(message, text if name in raw else value))
        values[name], origins[name] = value, origin

    if 'format' in values and values['format'] not in COMMAND_FORMATS[command]:
        raise _invalid('format', origins['format'], '"{}" cannot write {} output'.format(command, values['format']))
    if 'bracket_low' in values and not values['bracket_low'] < values['bracket_high']:
        raise _invalid('bracket_low', origins['bracket_low'], 'must be below bracket_high')
    if values.get('grid_min') is not None and values.get('grid_max') is not None \
            and not values['grid_min'] < values['grid_max']:
        raise _invalid('grid_min', origins['grid_min'], 'must be below grid_max')
    return RunConfig(command, values, origins)


def add_arguments(parser, command):
    """Add the config file option and one flag per field of 'command' to a sub command parser"""
    parser.add_argument('-c', '--config', help='INI file with a [{}] and/or [{}] section'.format(
        config.CONFIG_COMMON_SECTION, command))
    for name in COMMAND_FIELDS[command]:
        field = FIELDS[name]
        if field.parse is _bool:
            parser.add_argument(flag_name(name), dest=name, action='store_const', const='true', help=field.help)
        else:
            parser.add_argument(flag_name(name), dest=name, metavar='VALUE', help=field.help)


def from_args(command, args):
    """Resolve the configuration of a parsed sub command"""
    overrides = {name: getattr(args, name, None) for name in COMMAND_FIELDS[command]}
    return load(command, getattr(args, 'config', None), overrides)
