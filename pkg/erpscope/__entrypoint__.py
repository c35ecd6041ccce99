#!/bin/python3

'''
    Loading and setup hooks for ERPScope
        `__load__()` checks the interpreter and imports the core utilities,
        `__setup__()` configures logging from a `logging.toml`
'''

#> Imports
import sys
import tomllib
from pathlib import Path
from importlib import import_module
#</Imports

#> Header
__all__ = ('MIN_PYTHON_VERSION', 'VERSION', 'logger', 'util', '__load__', '__setup__')

MIN_PYTHON_VERSION = (3, 12, 0)
VERSION = '1.0.0'

util = NotImplemented
logger = NotImplemented

def _import(name):
    return import_module(f'.{name}' if __package__ else name, package=__package__)
#</Header

#> Main >/
def __load__():
    '''Load core Python modules'''
    # Check for minimum version
    assert sys.version_info[:3] >= MIN_PYTHON_VERSION, f'Minimum Python version not met! Need {".".join(map(str, MIN_PYTHON_VERSION))}, got {".".join(map(str, sys.version_info[:3]))}'
    # Import util
    global util, logger
    util = _import('util')
    logger = util.logger.root_logger
def _find_log_cfg() -> Path | None:
    for p in (Path.cwd() / 'logging.toml', Path(__file__).parent.parent / 'logging.toml'):
        if p.is_file(): return p
    return None
def __setup__(log_cfg: Path | None = None):
    '''
        Setup logging
            Reads `log_cfg`, or else the first `logging.toml` in the current directory or the repository root
            If logging was already set up, it is reconfigured instead
    '''
    if log_cfg is None: log_cfg = _find_log_cfg()
    conf = tomllib.loads(log_cfg.read_text()) if (log_cfg is not None) and log_cfg.exists() else {}
    if util.logger.initted(): util.logger.reconfigure(conf)
    else: util.logger.init(conf)

__load__()

if __name__ == '__main__':
    raise NotImplementedError('The __entrypoint__ should not be executed directly')
