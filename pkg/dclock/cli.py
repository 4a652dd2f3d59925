"""
CLI module for dclock
This module is responsible for bootstrapping the application and executing the CLI

Exit status: 0 on success, 1 for invalid commands or configurations, 2 for numerical failures and unknown errors
"""

import argparse
import contextlib
import sys

import dclock.events as events
import dclock.exceptions as exceptions
import dclock.log_utils as log
import dclock.ops as ops

# Messages

error_messages = {
    'VALIDATION': 'Invalid Command:',
    'NUMERICAL': 'Numerical Failure:',
    'UNKNOWN': 'Unknown error occurred'
}

output_messages = {
    'WRITTEN': 'Written {}: '
}

exit_codes = {
    'SUCCESS': 0,
    'VALIDATION': 1,
    'NUMERICAL': 2,
}

# Primary parser


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors are validation errors, so they share exit status 1 with bad values"""

    def error(self, message):
        raise exceptions.CLIValidationException('{}: {}'.format(self.prog, message))


parser = ArgumentParser(
    prog='dclock',
    description='Ramsey spectroscopy of a decohering two-level clock: lineshapes, optimal Ramsey times and '
                'conditional-probability clocks'
)
parser.add_argument(
    '-v', '--verbose',
    action='store_true',
    help='Also print the diagnostics of the integrator and the root finder'
)

# Command parser

command_subparsers = parser.add_subparsers(
    dest='command',
    title='dclock Commands',
    description='List of all available dclock commands'
)
command_subparsers.required = True


@events.subscriber(events.events['OUTPUT_WRITTEN'])
def _report_output(path, kind):
    log.cli_output('{}{}'.format(output_messages['WRITTEN'].format(kind.upper()), path))


@contextlib.contextmanager
def cli_manager(command=None, exit_on_error=True, raise_error=False):
    """
    Provides a context for processing parsed CLI commands while catching and handling exceptions
    :param command: Command list to be forwarded to argparse. If None, system arguments are used
    :param exit_on_error: If True, process exits on error
    :param raise_error: If True, caught exception is raised
    """
    status, error, args = exit_codes['SUCCESS'], None, None
    try:
        args = parser.parse_args(command)
        # The command runs inside this context
        yield args
    except exceptions.CLIValidationException as exc:
        error = exc
        log.cli_output("{} {}".format(error_messages['VALIDATION'], str(exc)))
        log.logger.exception("Validation Error")
        status = exit_codes['VALIDATION']
    except exceptions.DClockException as exc:
        error = exc
        log.cli_output('{} {}'.format(error_messages['NUMERICAL'], str(exc)))
        log.logger.exception("Numerical Failure")
        status = exit_codes['NUMERICAL']
    except Exception as exc:
        error = exc
        log.cli_output(error_messages['UNKNOWN'])
        log.logger.exception("Unknown Error")
        status = exit_codes['NUMERICAL']
    finally:
        # Without parsed arguments there is nothing to hand to the caller
        if error is not None and (raise_error or (args is None and not exit_on_error)):
            raise error
        if exit_on_error:
            sys.exit(status)


def exec_cli():
    """Executes the CLI when this module is run as a script"""

    # Import all CLI modules, which also makes them auto-subscribe to CLI events
    ops.import_ops()

    # Extend CLI parser with sub-command parsers
    events.invoke_subscribers(events.events['CLI_REGISTRY'], command_subparsers, parents=[])

    with cli_manager() as args:
        # Numerical diagnostics go to the terminal only when asked for
        log.set_verbose(args.verbose)

        # Execute command
        events.invoke_subscribers(events.command_key(args.command), args)
