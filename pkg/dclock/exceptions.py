class DClockException(Exception):
    """Base Class for all dclock related exceptions"""
    pass


class CLIValidationException(DClockException):
    """Exception class for validation errors in CLI commands and run configurations"""
    pass


class NumericalError(DClockException):
    """Exception class for failures of a numerical procedure (no root, no fringe, step limit, poles)"""
    pass
