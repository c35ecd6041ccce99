#!/bin/python3

'''
    Exceptions raised throughout ERPScope

    Each derives from a built-in exception, so callers that do not care about ERPScope's
        categories can still catch `ValueError`, `RuntimeError`, or `OSError`
'''

#> Header >/
__all__ = ('ParameterError', 'LengthError', 'ShapeError', 'EmptyInputError',
           'UndefinedInputError', 'InsufficientStructureError',
           'ConfigurationError', 'ConvergenceError', 'OutputError', 'DataError')

class ParameterError(ValueError):
    '''An argument is outside of its valid domain'''
class LengthError(ParameterError):
    '''A sequence is too short for the requested operation'''
class ShapeError(ValueError):
    '''Arrays (or their metadata) do not agree in shape'''
class EmptyInputError(ValueError):
    '''An operation that needs at least one item was given none'''
class UndefinedInputError(ValueError):
    '''The input makes the requested quantity mathematically undefined (e.g. zero total power)'''
class InsufficientStructureError(ValueError):
    '''The input does not contain enough structure (e.g. extrema) to compute a statistic'''

class ConfigurationError(ValueError):
    '''A configuration value is missing or invalid; `field` names the offending (dotted) key'''
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

class ConvergenceError(RuntimeError):
    '''An iterative solver hit its iteration cap; `violation` is the final optimality gap'''
    def __init__(self, message: str, violation: float):
        super().__init__(message)
        self.violation = violation

class OutputError(OSError):
    '''An artifact could not be written'''

class DataError(RuntimeError):
    '''Stage input data is missing or malformed; `path` names the offending file, if any'''
    def __init__(self, message: str, path: 'Path | None' = None):
        super().__init__(message)
        self.path = path
