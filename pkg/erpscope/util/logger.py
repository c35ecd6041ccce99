#!/bin/python3

'''
    ERPScope's logging facilities

    Adds the `TRACE`, `VERBOSE`, `TERSE`, and `FATAL` levels (and matching logger methods)
        on import, so library code may log before `init()` has configured any handlers
    Every subpackage logs under a child of `root_logger` (`ES.SIG`, `ES.WAV`, ...)
'''

#> Imports
import os
import sys
import logging, logging.config
from functools import partialmethod
#</Imports

#> Header >/
__all__ = ('root_logger', 'config', 'init', 'initted', 'reconfigure', 'set_console_level')

root_logger = logging.getLogger('ES')

# Levels
def _add_level(logcls: type, name: str, level: int):
    setattr(logging, name.upper(), level)
    logging.addLevelName(level, name.upper())
    setattr(logcls, name.lower(), partialmethod(logcls.log, level))
def _between(lo: int, hi: int) -> int: return lo + (hi - lo) // 2
_logcls = logging.getLoggerClass()
if not hasattr(_logcls, 'terse'):
    _add_level(_logcls, 'trace', _between(logging.NOTSET, logging.DEBUG))     # per-item parameter dumps
    _add_level(_logcls, 'verbose', _between(logging.DEBUG, logging.INFO))     # per-subject progress
    _add_level(_logcls, 'terse', _between(logging.INFO, logging.WARNING))     # one line per stage
    _add_level(_logcls, 'fatal', logging.CRITICAL * 2)

# Configuration
config = {
    'version': 1,
    'disable_existing_loggers': False,
    'names': {},
    'styling': {'do_style': False},
}
_LOCAL_KEYS = frozenset({'names', 'styling'})
def reconfigure(conf: dict):
    '''Merges `conf` into the active configuration and reapplies it'''
    for k,v in conf.items():
        if (k in config) and isinstance(v, dict): config[k] |= v
        else: config[k] = v
    for level,short in config['names'].items():
        logging.addLevelName(logging.getLevelName(level), short)
    _StylishFormatter.restyle(config['styling'])
    logging.config.dictConfig({k: v for k,v in config.items() if k not in _LOCAL_KEYS})

def set_console_level(level: str | int):
    '''Sets the threshold of the stream handlers on `root_logger`, leaving file handlers alone'''
    if isinstance(level, str):
        name = level
        level = logging.getLevelNamesMapping().get(name.upper(), None)
        if level is None: raise ValueError(f'Unknown logging level {name!r}')
    for h in root_logger.handlers:
        if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler):
            h.setLevel(level)

# Console formatter
class _StylishFormatter(logging.Formatter):
    '''Wraps each record in the VT100 style configured for its level'''
    STYLED = '\x1b[{}m{{}}\x1b[0m'
    PLAIN = '{}'

    under_idle = getattr(sys.stderr, '__module__', '').startswith('idle')
    on_windows = os.name == 'nt'

    styles = {}
    enabled = False

    @classmethod
    def restyle(cls, styling: dict):
        cls.enabled = styling.get('do_style', False) \
                      and ((not cls.under_idle) or styling.get('try_style_idle', False)) \
                      and ((not cls.on_windows) or styling.get('try_style_windows', False))
        if not cls.enabled: return
        known = logging.getLevelNamesMapping()
        cls.styles = {known[name]: (cls.STYLED.format(code) if code else cls.PLAIN)
                      for name,code in styling.get('levels', {}).items() if name in known}
    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if not self.enabled: return text
        return self.styles.get(record.levelno, self.PLAIN).format(text)

# Initialization
_initted = False
def initted() -> bool:
    return _initted
def init(conf: dict):
    '''Configures logging for the first time; later changes go through `reconfigure()`'''
    global _initted
    if _initted:
        raise RuntimeError('Logging was already initialized! Maybe you meant `reconfigure()`?')
    _initted = True
    reconfigure(conf)
