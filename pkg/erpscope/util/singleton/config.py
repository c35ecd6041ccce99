#!/bin/python3

'''
    Provides flat, TOML-backed configuration for ERPScope

    Configuration documents are nested TOML tables; a `Config` holds them flattened into
        dotted keys (`'preprocess.lo_hz'`), remembers which keys still hold their defaults
'''

#> Imports
import json
import math
import typing
import tomllib
from pathlib import Path
from collections import UserDict

from ..errors import ConfigurationError
from ..tools.flattools import flatten_map
#</Imports

#> Header >/
__all__ = ('Config', 'dump_toml')

def _toml_value(key: str, v: typing.Any) -> str:
    if isinstance(v, bool) or v is None:
        if v is None:
            raise ConfigurationError(f'TOML has no null; cannot write {key!r}', key)
        return 'true' if v else 'false'
    if isinstance(v, float) and not math.isfinite(v):
        return ('nan' if math.isnan(v) else ('inf' if v > 0 else '-inf'))
    if isinstance(v, (int, float, str)):
        return json.dumps(v) # JSON scalars are valid TOML basic values
    if isinstance(v, Path):
        return json.dumps(v.as_posix())
    if isinstance(v, typing.Mapping):
        return f'{{ {", ".join(f"{json.dumps(str(k))} = {_toml_value(key, iv)}" for k,iv in v.items())} }}'
    if isinstance(v, typing.Iterable):
        return f'[{", ".join(_toml_value(key, iv) for iv in v)}]'
    raise ConfigurationError(f'Cannot write a {type(v).__name__} to TOML for {key!r}', key)
def dump_toml(m: typing.Mapping[str, typing.Any], *, header: str | None = None) -> str:
    '''
        Writes a (nested) mapping as TOML
            Top-level scalars come first, then one `[section]` per nested mapping
            Mappings nested deeper than one section are written as dotted section names
    '''
    lines = [f'# {l}' for l in header.splitlines()] if header else []
    def section(name: str | None, body: typing.Mapping):
        scalars = {k: v for k,v in body.items() if not isinstance(v, typing.Mapping)}
        tables = {k: v for k,v in body.items() if isinstance(v, typing.Mapping)}
        if name is not None and (scalars or not tables):
            if lines: lines.append('')
            lines.append(f'[{name}]')
        for k,v in scalars.items():
            lines.append(f'{k} = {_toml_value(k if name is None else f"{name}.{k}", v)}')
        for k,v in tables.items():
            section(k if name is None else f'{name}.{k}', v)
    section(None, m)
    return '\n'.join(lines) + '\n'

class Config(UserDict):
    '''A flat mapping of dotted keys to values, overlaid onto (and tracking) defaults'''
    __slots__ = ('data', 'defaults')

    def __init__(self):
        self.data = {}
        self.defaults = set()

    @classmethod
    def load_map(cls, m: typing.Mapping[str, typing.Any], *, defaults: typing.Mapping[str, typing.Any] | None = None,
                 strict: bool = True) -> typing.Self:
        '''
            Flattens `m` and overlays it onto the flattened `defaults`
            If `strict`, keys in `m` that are not present in `defaults` raise a `ConfigurationError`
        '''
        self = cls()
        fdefaults = {} if defaults is None else flatten_map(defaults)
        fm = flatten_map(m)
        if strict and (defaults is not None):
            unknown = sorted(set(fm) - set(fdefaults))
            if unknown:
                exc = ConfigurationError(f'Unknown configuration key {unknown[0]!r}', unknown[0])
                if len(unknown) > 1: exc.add_note(f'Also unknown: {", ".join(unknown[1:])}')
                raise exc
        self.data = fdefaults | fm
        self.defaults = set(fdefaults) - set(fm)
        return self
    @classmethod
    def loadf(cls, f: Path, *, defaults: typing.Mapping[str, typing.Any] | None = None, strict: bool = True) -> typing.Self:
        '''Loads an instance from the TOML file at `f`'''
        try: doc = tomllib.loads(f.read_text())
        except tomllib.TOMLDecodeError as e:
            exc = ConfigurationError(f'Malformed TOML in {f}: {e}')
            exc.add_note(f'File: {f}')
            raise exc from e
        return cls.load_map(doc, defaults=defaults, strict=strict)

    def section(self, name: str) -> dict[str, typing.Any]:
        '''Returns the keys under `name.` with the prefix stripped'''
        pfx = f'{name}.'
        return {k[len(pfx):]: v for k,v in self.data.items() if k.startswith(pfx)}
    def __setitem__(self, item: str, val: typing.Any):
        self.defaults.discard(item)
        self.data[item] = val
    def is_default(self, item: str) -> bool:
        '''Whether `item` still holds the value it was given by `defaults`'''
        return item in self.defaults
