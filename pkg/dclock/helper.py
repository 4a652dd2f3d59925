import concurrent.futures
import functools
import os

import numpy as np

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.log_utils as log


# Exceptions


class Disallowed(exceptions.DClockException):
    """Exception class for attempts to perform restricted operations"""
    pass


# Decorators


def frozen(cls):
    """Marks a class as readonly after instantiation"""

    @functools.wraps(cls, updated=[])
    class FrozenClassWrapper(cls):
        def __init__(self, *args, **kwargs):
            cls.__init__(self, *args, **kwargs)
            self._frozen = True

        def __setattr__(self, key, value):
            if hasattr(self, '_frozen') and self._frozen is True:
                raise Disallowed('Cannot update frozen object of class "{}"'.format(type(self).__name__))
            cls.__setattr__(self, key, value)

    return FrozenClassWrapper


def readonly_array(values, dtype=complex):
    """Copy 'values' into a numpy array that cannot be modified in place"""
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


# Utils


def get_thread_count():
    """Number of worker threads for scans and sweeps, read from the environment (defaults to 1)"""
    raw = os.environ.get(config.THREADS_ENV_VAR)
    if raw is None or raw.strip() == '':
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise exceptions.CLIValidationException(
            '{} must be a positive integer, got "{}"'.format(config.THREADS_ENV_VAR, raw))
    if count < 1:
        raise exceptions.CLIValidationException(
            '{} must be a positive integer, got "{}"'.format(config.THREADS_ENV_VAR, raw))
    return count


def parallel_map(fn, items):
    """
    Apply 'fn' to every item, optionally on a thread pool
    Results are always returned in the order of 'items', whatever the execution order
    """
    items = list(items)
    workers = get_thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    log.logger.debug('Evaluating %d items on %d threads', len(items), workers)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
