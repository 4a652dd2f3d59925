"""
Loggers of dclock

'logger' records numerical details (step plans, root counts, resolved run configurations) in a rotating log file.
'cli_logger' writes command results to the terminal and to the same file.
"""

import logging.handlers
import os
import sys

import dclock.config as config


def _get_log_dir():
    """The log directory is first checked in the environment and then in the config file"""
    return os.environ.get(config.LOG_DIR_ENV_VAR, config.LOG_DIR_DEFAULT)


def _create_file_handler():
    """Rotating file handler in the log directory, or a NullHandler when the directory cannot be created"""
    log_dir = _get_log_dir()
    try:
        os.makedirs(log_dir, exist_ok=True)
        handler = logging.handlers.RotatingFileHandler(
            os.path.join(log_dir, config.LOG_FILE_NAME),
            mode='a',
            maxBytes=config.LOG_FILE_MAX_SIZE,
            backupCount=config.LOG_FILE_NUM_BACKUPS
        )
    except OSError:
        return logging.NullHandler()
    handler.setFormatter(logging.Formatter(
        "%(asctime)s [%(levelname)s] || %(module)s :: %(funcName)s :: %(lineno)s || %(message)s"
    ))
    handler.setLevel(config.LOG_LEVEL_FILE)
    return handler


def cli_output(message):
    """
    Logs a message with severity equal to INFO
    The logging level of the CLI logger is also INFO and hence this logs the message on the terminal
    """
    cli_logger.info(message)


def set_verbose(verbose):
    """Show the records of the numerical modules on the terminal as well"""
    if verbose:
        cli_handler.setLevel('DEBUG')
        if cli_handler not in logger.handlers:
            logger.addHandler(cli_handler)
    else:
        cli_handler.setLevel('INFO')
        logger.removeHandler(cli_handler)


# File Handler

file_handler = _create_file_handler()

# CLI Handler

cli_handler = logging.StreamHandler(stream=sys.stdout)
cli_handler.setFormatter(logging.Formatter("{}%(message)s".format(config.CLI_OUTPUT_PREFIX)))
cli_handler.setLevel('INFO')

# File logger

logger = logging.getLogger('dclock')
logger.addHandler(file_handler)
logger.setLevel('DEBUG')

# CLI logger

cli_logger = logging.getLogger('dclock-cli')
cli_logger.addHandler(file_handler)
cli_logger.addHandler(cli_handler)
cli_logger.setLevel('DEBUG')
