import functools

import dclock.events as events
import dclock.file_system as fs
import dclock.log_utils as log
import dclock.run_config as run_config


def cli_command(command_key):
    """
    Decorator for registering and logging CLI commands
    The decorated function receives the parsed arguments and the resolved RunConfig of the command
    """

    def _decorator(fn):

        @functools.wraps(fn)
        @events.subscriber(events.command_key(command_key), unique=True)
        def wrapper(args):
            log.logger.debug('Executing command "%s". Args: "%s"', command_key, args)
            conf = run_config.from_args(command_key, args)
            log.logger.debug('Resolved configuration: %s', conf)
            try:
                fn(args, conf)
            except Exception:
                log.logger.debug('Command failed')
                raise
            else:
                log.logger.debug('Command executed')

        return wrapper

    return _decorator


def add_command(parser, command, help_text, parents=()):
    """Add a sub command parser with the config file option and one flag per configuration field"""
    sub_parser = parser.add_parser(command, parents=parents, help=help_text)
    run_config.add_arguments(sub_parser, command)
    return sub_parser


def write_rows(conf, header, rows, document=None):
    """
    Write a result table to 'conf.output' in CSV (header and rows) or JSON (one object per row, plus 'document')
    Nothing is written when no output path is configured
    """
    if conf.output is None or conf.format == 'svg':
        return
    if conf.format == 'csv':
        fs.save_csv(conf.output, header, rows)
    else:
        data = dict(document or {})
        data['rows'] = [dict(zip(header, row)) for row in rows]
        fs.save_json(data, conf.output)
