#!/bin/python3

'''
    Utilities shared across ERPScope's subpackages,
        and exposed for convenience
'''

#> Package >/
__all__ = (
    # top-level
    'errors', 'logger', 'parallel', 'plotting',
    # in folders
    ## tools
    'flattools', 'functools', 'hashtools',
    ## singleton
    'Config', 'dump_toml',
)

# Top-level modules
from . import errors, logger, parallel, plotting

# Modules in folders
from .tools import flattools, functools, hashtools

# Singleton modules
from .singleton.config import Config, dump_toml
