#!/bin/python3

'''
    ERPScope: event-related potential classification and region-of-interest analysis

    This is a stub file that simply re-exposes `__entrypoint__`
        for the purposes of importing as a package/module
'''

#> Package >/
from . import __entrypoint__

__all__ = __entrypoint__.__all__

def __dir__() -> list[str]:
    return list(__all__)
def __getattr__(name: str):
    return getattr(__entrypoint__, name)
