#!/bin/python3

'''
    Electrode layouts: 10-10 labels with projected scalp positions, hemispheres and regions

    Layout files are CSV with the columns `label,x,y,hemisphere,region`; positions lie in the unit
        head circle with the nose towards +y and the right ear towards +x. Empty hemisphere or region
        cells are inferred from the label: a `z` suffix is midline, odd numbers left, even numbers right;
        Fp/AF/F prefixes are anterior, FT/FC/C/T/TP/CP central, and P/PO/O/I posterior
'''

#> Imports
import re
import typing
from pathlib import Path
from types import MappingProxyType
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import logger
from ..util.errors import ConfigurationError, DataError
#</Imports

#> Header >/
__all__ = ('HEMISPHERES', 'REGIONS', 'DEFAULT_LAYOUT',
           'Electrode', 'ElectrodeLayout', 'infer_hemisphere', 'infer_region', 'load_layout')

HEMISPHERES = ('left', 'right', 'midline')
REGIONS = ('anterior', 'central', 'posterior')
DEFAULT_LAYOUT = Path(__file__).parent.parent / 'data' / 'biosemi64.csv'

_PREFIX_REGIONS = MappingProxyType({
    'Fp': 'anterior', 'AF': 'anterior', 'F': 'anterior',
    'FT': 'central', 'FC': 'central', 'C': 'central', 'T': 'central', 'TP': 'central', 'CP': 'central',
    'P': 'posterior', 'PO': 'posterior', 'O': 'posterior', 'I': 'posterior',
})
_LABEL_PATT = re.compile(r'^(?P<prefix>[A-Za-z]+?)(?P<site>z|\d+)$')

def _split_label(label: str) -> re.Match:
    m = _LABEL_PATT.fullmatch(label)
    if m is None: raise ConfigurationError(f'{label!r} is not a 10-10 electrode label', 'label')
    return m
def infer_hemisphere(label: str) -> str:
    site = _split_label(label)['site']
    if site == 'z': return 'midline'
    return 'left' if (int(site) % 2) else 'right'
def infer_region(label: str) -> str:
    prefix = _split_label(label)['prefix']
    try: return _PREFIX_REGIONS[prefix]
    except KeyError:
        raise ConfigurationError(f'Cannot infer the region of {label!r} from its prefix {prefix!r}', 'region') from None

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class Electrode:
    label: str
    x: float
    y: float
    hemisphere: typing.Literal[*HEMISPHERES]
    region: typing.Literal[*REGIONS]

    def __post_init__(self):
        if self.hemisphere not in HEMISPHERES:
            raise ConfigurationError(f'{self.label}: unknown hemisphere {self.hemisphere!r}', 'hemisphere')
        if self.region not in REGIONS:
            raise ConfigurationError(f'{self.label}: unknown region {self.region!r}', 'region')
        if (self.x * self.x + self.y * self.y) > 1. + 1e-9:
            raise ConfigurationError(f'{self.label}: position ({self.x}, {self.y}) lies outside the unit head circle', 'x')
        # hemisphere and position have to agree
        match self.hemisphere:
            case 'midline' if self.x != 0.:
                raise ConfigurationError(f'Midline electrode {self.label} must have x = 0, got {self.x}', 'x')
            case 'left' if not (self.x < 0):
                raise ConfigurationError(f'Left-hemisphere electrode {self.label} must have x < 0, got {self.x}', 'x')
            case 'right' if not (self.x > 0):
                raise ConfigurationError(f'Right-hemisphere electrode {self.label} must have x > 0, got {self.x}', 'x')

class ElectrodeLayout(typing.Sequence[Electrode]):
    '''An ordered collection of uniquely labeled electrodes'''
    __slots__ = ('electrodes', '_index')

    def __init__(self, electrodes: typing.Iterable[Electrode]):
        self.electrodes = tuple(electrodes)
        if not self.electrodes: raise ConfigurationError('A layout needs at least one electrode', 'label')
        self._index = MappingProxyType({e.label: i for i,e in enumerate(self.electrodes)})
        if len(self._index) != len(self.electrodes):
            dups = sorted({e.label for e in self.electrodes if sum(o.label == e.label for o in self.electrodes) > 1})
            raise ConfigurationError(f'Duplicate electrode label(s): {", ".join(dups)}', 'label')

    @typing.overload
    def __getitem__(self, key: int | str) -> Electrode: ...
    @typing.overload
    def __getitem__(self, key: slice) -> tuple[Electrode, ...]: ...
    def __getitem__(self, key: int | str | slice) -> Electrode | tuple[Electrode, ...]:
        if isinstance(key, str):
            try: return self.electrodes[self._index[key]]
            except KeyError:
                raise ConfigurationError(f'Electrode {key!r} is not in the layout', 'label') from None
        return self.electrodes[key]
    def __len__(self) -> int:
        return len(self.electrodes)
    def __contains__(self, label: object) -> bool:
        if isinstance(label, Electrode): return label in self.electrodes
        return label in self._index
    def __repr__(self) -> str:
        return f'<{type(self).__qualname__} of {len(self)} electrode(s)>'

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._index)
    def positions(self) -> np.ndarray:
        '''Electrode positions as an n x 2 array, in layout order'''
        return np.array([(e.x, e.y) for e in self.electrodes], dtype=float).reshape(-1, 2)
    def in_hemisphere(self, hemisphere: str) -> tuple[str, ...]:
        return tuple(e.label for e in self.electrodes if e.hemisphere == hemisphere)

def load_layout(path: Path | None = None) -> ElectrodeLayout:
    '''Loads a layout file; without `path`, the shipped 64-channel 10-10 layout'''
    if path is None: path = DEFAULT_LAYOUT
    try: df = pd.read_csv(path, dtype={'label': str, 'hemisphere': str, 'region': str}, keep_default_na=False)
    except FileNotFoundError as e:
        raise DataError(f'Layout file {path} does not exist', path) from e
    cols = ('label', 'x', 'y', 'hemisphere', 'region')
    if tuple(df.columns) != cols:
        exc = ConfigurationError(f'{path} must have the columns {",".join(cols)}', 'layout')
        exc.add_note(f'Found: {",".join(map(str, df.columns))}')
        raise exc
    electrodes = []
    for row in df.itertuples(index=False):
        try:
            electrodes.append(Electrode(label=row.label, x=float(row.x), y=float(row.y),
                                        hemisphere=row.hemisphere or infer_hemisphere(row.label),
                                        region=row.region or infer_region(row.label)))
        except (ConfigurationError, ValueError) as e:
            if not isinstance(e, ConfigurationError):
                e = ConfigurationError(f'{row.label}: {e}', 'x')
            e.add_note(f'In layout file {path}')
            raise e
    layout = ElectrodeLayout(electrodes)
    logger.verbose(f'Loaded {len(layout)} electrode(s) from {path}')
    return layout
