#!/bin/python3

'''Function utilities: sharing default argument values between related functions'''

#> Imports
import typing
import inspect
#</Imports

#> Header >/
__all__ = ('DEFAULT', 'defaults')

class DEFAULT:
    def __new__(cls):
        return DEFAULT
    def __reduce__(self):
        return (type(self), ())
    def __repr__(self) -> str:
        return 'DEFAULT'
DEFAULT = object.__new__(DEFAULT)

def defaults(supplier: typing.Callable, unwrap: bool = True):
    '''
        Decorator to make a function automatically take default
            values from another
        Any default value of `DEFAULT` in the wrapped function is replaced with
            the default of the *same-named* parameter in `supplier`
        Note that this modifies the wrapped function in-place, it does not create a new one
        Raises `TypeError` if `supplier` has no default for a `DEFAULT`ed parameter
    '''
    if unwrap: supplier = inspect.unwrap(supplier)
    sdefaults = {n: p.default for n,p in inspect.signature(supplier).parameters.items()
                 if p.default is not inspect.Parameter.empty}
    def mutator(target: typing.Callable) -> typing.Callable:
        inner = inspect.unwrap(target) if unwrap else target
        names = inner.__code__.co_varnames[:inner.__code__.co_argcount]
        if inner.__defaults__:
            offset = len(names) - len(inner.__defaults__)
            inner.__defaults__ = tuple(_lookup(sdefaults, names[offset+i], supplier) if d is DEFAULT else d
                                       for i,d in enumerate(inner.__defaults__))
        if inner.__kwdefaults__:
            for k,v in inner.__kwdefaults__.items():
                if v is DEFAULT:
                    inner.__kwdefaults__[k] = _lookup(sdefaults, k, supplier)
        return target
    return mutator
def _lookup(sdefaults: dict, name: str, supplier: typing.Callable) -> typing.Any:
    try: return sdefaults[name]
    except KeyError:
        raise TypeError(f'{supplier.__qualname__}() has no default for parameter {name!r}') from None
