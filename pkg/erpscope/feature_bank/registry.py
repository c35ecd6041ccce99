#!/bin/python3

'''
    The feature registry: an ordered list of `FeatureDescriptor`s, each binding a feature kind
        to the part of the signal it is computed on, an optional time window, and parameters

    Registries are TOML documents of `[[feature]]` tables:
        name = 'L100-200'
        kind = 'latency'
        part = 'LP'           # 'LP', 'HP' or 'full'
        window_ms = [100, 200] # optional, required by windowed kinds
        parameters = {}       # optional
'''

#> Imports
import math
import typing
import tomllib
from pathlib import Path
from types import MappingProxyType
from dataclasses import dataclass, field

import numpy as np

from . import logger
from . import temporal, statistical, spectral
from .temporal import TimeWindow
from ..signal_core import SamplingMeta
from ..util.errors import ConfigurationError, ParameterError, InsufficientStructureError, UndefinedInputError
#</Imports

#> Header >/
__all__ = ('PARTS', 'KINDS', 'WINDOWED_KINDS', 'DEFAULT_REGISTRY',
           'FeatureDescriptor', 'parse_registry', 'load_registry', 'default_registry')

PARTS = ('LP', 'HP', 'full')
DEFAULT_REGISTRY = Path(__file__).parent.parent / 'data' / 'registry.toml'

class _Context:
    '''Per-(channel, part) evaluation state; shares one periodogram between the spectral features'''
    __slots__ = ('x', 'meta', '_spectrum')

    def __init__(self, x: np.ndarray, meta: SamplingMeta):
        self.x = x
        self.meta = meta
        self._spectrum = None
    def spectrum(self) -> spectral.Spectrum:
        if self._spectrum is None: self._spectrum = spectral.periodogram(self.x, self.meta.rate_hz)
        return self._spectrum

type _Evaluator = typing.Callable[[_Context, TimeWindow | None, typing.Mapping[str, typing.Any]], float]

# (evaluator, needs a window, {parameter: default})
KINDS: typing.Mapping[str, tuple[_Evaluator, bool, dict[str, typing.Any]]] = MappingProxyType({
    # temporal
    'latency': (lambda c,w,p: temporal.latency(c.x, c.meta, w), True, {}),
    'abs_amplitude': (lambda c,w,p: temporal.abs_amplitude(c.x), False, {}),
    'positive_area': (lambda c,w,p: temporal.positive_area(c.x, c.meta, w), True, {}),
    'max_peak_ratio': (lambda c,w,p: temporal.max_peak_ratio(c.x, c.meta, w), True, {}),
    'energy': (lambda c,w,p: temporal.signal_energy(c.x), False, {}),
    'histogram_entropy': (lambda c,w,p: temporal.histogram_entropy(c.x, p['bins']), False, {'bins': 16}),
    # statistical
    'zero_crossing_rate': (lambda c,w,p: statistical.zero_crossing_rate(c.x), False, {}),
    'interval_mean': (lambda c,w,p: statistical.derivative_interval_stats(c.x).mean, False, {}),
    'interval_sd': (lambda c,w,p: statistical.derivative_interval_stats(c.x).sd, False, {}),
    'interval_skewness': (lambda c,w,p: statistical.derivative_interval_stats(c.x).skewness, False, {}),
    # spectral
    'spectral_flatness': (lambda c,w,p: spectral.spectral_flatness(c.spectrum()), False, {}),
    'spectral_rolloff': (lambda c,w,p: spectral.spectral_rolloff(c.spectrum(), p['fraction']), False, {'fraction': .7}),
    'spectral_deformation': (lambda c,w,p: spectral.spectral_deformation_width(c.spectrum()).deformation, False, {}),
    'spectral_width': (lambda c,w,p: spectral.spectral_deformation_width(c.spectrum()).width, False, {}),
    'spectral_centroid': (lambda c,w,p: spectral.spectral_centroid(c.spectrum()), False, {}),
    'spectral_entropy': (lambda c,w,p: spectral.spectral_entropy(c.spectrum()), False, {}),
    'band_power': (lambda c,w,p: spectral.band_power(c.spectrum(), p['lo_hz'], p['hi_hz']), False,
                   {'lo_hz': None, 'hi_hz': None}),
})
WINDOWED_KINDS = frozenset(k for k,(_,w,_) in KINDS.items() if w)

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class FeatureDescriptor:
    '''
        Binds a feature kind to a signal part, an optional window and its parameters
            For kinds that are not windowed, a window crops the signal before evaluation
    '''
    name: str
    kind: str
    part: typing.Literal[*PARTS]
    window: TimeWindow | None = None
    parameters: typing.Mapping[str, typing.Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f'Unknown feature kind {self.kind!r} for {self.name!r}', 'kind')
        if self.part not in PARTS:
            raise ConfigurationError(f'Feature {self.name!r} references unknown part {self.part!r} '
                                     f'(expected one of {", ".join(PARTS)})', 'part')
        if (self.kind in WINDOWED_KINDS) and (self.window is None):
            raise ConfigurationError(f'Feature {self.name!r} of kind {self.kind!r} needs a window', 'window_ms')
        defaults = KINDS[self.kind][2]
        unknown = set(self.parameters) - set(defaults)
        if unknown:
            raise ConfigurationError(f'Unknown parameter(s) for {self.name!r}: {", ".join(sorted(unknown))}', 'parameters')
        params = defaults | dict(self.parameters)
        missing = sorted(k for k,v in params.items() if v is None)
        if missing:
            raise ConfigurationError(f'Feature {self.name!r} is missing parameter(s): {", ".join(missing)}', 'parameters')
        object.__setattr__(self, 'parameters', MappingProxyType(params))

    def evaluate(self, ctx: _Context) -> float:
        '''
            Evaluates this feature in `ctx`
                Signals without enough structure or power yield `MISSING` (NaN) instead of raising
        '''
        if (self.window is not None) and (self.kind not in WINDOWED_KINDS):
            ctx = _Context(self.window.crop(ctx.x, ctx.meta), ctx.meta)
        try: return float(KINDS[self.kind][0](ctx, self.window, self.parameters))
        except (InsufficientStructureError, UndefinedInputError) as e:
            logger.trace(f'{self.name}: {e}; recording the missing-value sentinel')
            return math.nan

    def serialize_to_dict(self) -> dict:
        d = {'name': self.name, 'kind': self.kind, 'part': self.part}
        if self.window is not None: d['window_ms'] = [self.window.start_ms, self.window.end_ms]
        d['parameters'] = dict(self.parameters)
        return d
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        window = d.get('window_ms', None)
        if window is not None:
            if (not isinstance(window, typing.Sequence)) or (len(window) != 2):
                raise ConfigurationError(f'window_ms of {d.get("name")!r} must be [start, end]', 'window_ms')
            try: window = TimeWindow(start_ms=float(window[0]), end_ms=float(window[1]))
            except ParameterError as e:
                raise ConfigurationError(str(e), 'window_ms') from e
        return cls(name=str(d['name']), kind=str(d['kind']), part=str(d['part']),
                   window=window, parameters=dict(d.get('parameters', {})))

def parse_registry(doc: typing.Mapping) -> tuple[FeatureDescriptor, ...]:
    '''Builds a registry from a parsed TOML document'''
    entries = doc.get('feature', None)
    if not entries:
        raise ConfigurationError('A registry needs at least one [[feature]] table', 'feature')
    descs = []
    seen = set()
    for i,e in enumerate(entries):
        missing = {'name', 'kind', 'part'} - set(e)
        if missing:
            raise ConfigurationError(f'feature[{i}] is missing {", ".join(sorted(missing))}', f'feature[{i}].{min(missing)}')
        try: d = FeatureDescriptor.deserialize_from_dict(e)
        except ConfigurationError as exc:
            exc.field = f'feature[{i}].{exc.field}'
            raise
        if d.name in seen:
            raise ConfigurationError(f'Duplicate feature name {d.name!r}', f'feature[{i}].name')
        seen.add(d.name)
        descs.append(d)
    return tuple(descs)
def load_registry(path: Path) -> tuple[FeatureDescriptor, ...]:
    '''Loads a registry from the TOML file at `path`'''
    try: doc = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f'Malformed registry {path}: {e}', 'registry') from e
    except OSError as e:
        raise ConfigurationError(f'Could not read registry {path}: {e}', 'registry') from e
    reg = parse_registry(doc)
    logger.verbose(f'Loaded {len(reg)} feature descriptor(s) from {path}')
    return reg
def default_registry() -> tuple[FeatureDescriptor, ...]:
    '''The shipped 27-descriptor registry'''
    return load_registry(DEFAULT_REGISTRY)
