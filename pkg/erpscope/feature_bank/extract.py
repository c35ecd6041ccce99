#!/bin/python3

'''Assembles per-subject feature vectors and the subjects x features matrix'''

#> Imports
import typing
from pathlib import Path
from functools import partial
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import logger
from .registry import FeatureDescriptor, _Context
from .. import wavelet
from ..signal_core import SamplingMeta, ErpAverage, CLASS_LABELS
from ..util.parallel import thread_map
from ..util.errors import ParameterError, ShapeError, EmptyInputError, DataError, OutputError
#</Imports

#> Header >/
__all__ = ('FeatureVector', 'FeatureMatrix', 'extract_feature_vector', 'extract_feature_matrix',
           'impute_column_means', 'write_feature_matrix', 'read_feature_matrix')

type Layout = tuple[tuple[str, str], ...] # (electrode, feature name) per column

_dc = dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)

@_dc
class FeatureVector:
    values: np.ndarray
    layout: Layout
    subject_id: str = ''
    class_label: str | None = None

@_dc
class FeatureMatrix:
    '''Subjects x (electrodes x features) values; columns are electrode-major, registry-ordered within an electrode'''
    values: np.ndarray
    layout: Layout
    subject_ids: tuple[str, ...]
    class_labels: tuple[str | None, ...]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.layout = tuple(map(tuple, self.layout))
        self.subject_ids = tuple(self.subject_ids)
        self.class_labels = tuple(self.class_labels)
        if self.values.shape != (len(self.subject_ids), len(self.layout)):
            raise ShapeError(f'Feature matrix of shape {self.values.shape} does not match '
                             f'{len(self.subject_ids)} subject(s) x {len(self.layout)} column(s)')
        if len(self.class_labels) != len(self.subject_ids):
            raise ShapeError(f'{len(self.class_labels)} class label(s) given for {len(self.subject_ids)} subject(s)')

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(f'{e}:{f}' for e,f in self.layout)
    @property
    def electrodes(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(e for e,_ in self.layout))
    def labels(self) -> np.ndarray:
        '''Numeric class labels (0 for regular, 1 for dyslexic); raises `ParameterError` for unlabeled subjects'''
        try: return np.array([CLASS_LABELS.index(l) for l in self.class_labels], dtype=int)
        except ValueError:
            exc = ParameterError('Every subject needs a class label')
            exc.add_note(f'Unlabeled: {", ".join(s for s,l in zip(self.subject_ids, self.class_labels) if l not in CLASS_LABELS)}')
            raise exc from None

    @classmethod
    def from_vectors(cls, vectors: typing.Sequence[FeatureVector]) -> typing.Self:
        if not vectors: raise EmptyInputError('Cannot build a feature matrix from no vectors')
        for v in vectors[1:]:
            if v.layout != vectors[0].layout:
                raise ShapeError(f'Feature vector of {v.subject_id!r} has a different column layout')
        return cls(values=np.vstack([v.values for v in vectors]), layout=vectors[0].layout,
                   subject_ids=[v.subject_id for v in vectors], class_labels=[v.class_label for v in vectors])
    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame(self.values, columns=self.columns)
        df.insert(0, 'class_label', [('' if l is None else l) for l in self.class_labels])
        df.insert(0, 'subject_id', self.subject_ids)
        return df

def extract_feature_vector(lp_hp_per_channel: 'wavelet.SplitErp | typing.Sequence[tuple[np.ndarray, np.ndarray]]',
                           meta: SamplingMeta, registry: typing.Sequence[FeatureDescriptor], *,
                           channels: typing.Sequence[str] | None = None,
                           subject_id: str = '', class_label: str | None = None) -> FeatureVector:
    '''
        Evaluates every descriptor of `registry` on its designated part of every channel
            `lp_hp_per_channel` is either a `wavelet.SplitErp` or a sequence of (lp, hp) pairs
            Columns are electrode-major, in registry order within each electrode
            Features a channel has no structure (or power) for hold the missing-value sentinel (NaN)
    '''
    if isinstance(lp_hp_per_channel, wavelet.SplitErp):
        pairs = list(zip(lp_hp_per_channel.lp, lp_hp_per_channel.hp))
    else: pairs = list(lp_hp_per_channel)
    if not registry: raise EmptyInputError('The feature registry is empty')
    if not pairs: raise EmptyInputError('No channels to extract features from')
    if channels is None: channels = tuple(f'ch{i}' for i in range(len(pairs)))
    if len(channels) != len(pairs):
        raise ShapeError(f'{len(channels)} channel label(s) given for {len(pairs)} channel(s)')
    values = []
    for lp,hp in pairs:
        lp, hp = np.asarray(lp, dtype=float), np.asarray(hp, dtype=float)
        ctxs = {'LP': _Context(lp, meta), 'HP': _Context(hp, meta), 'full': _Context(lp + hp, meta)}
        values.extend(d.evaluate(ctxs[d.part]) for d in registry)
    layout = tuple((ch, d.name) for ch in channels for d in registry)
    return FeatureVector(values=np.array(values), layout=layout, subject_id=subject_id, class_label=class_label)

def _extract_one(erp: ErpAverage, registry: typing.Sequence[FeatureDescriptor], levels: int,
                 filters: wavelet.WaveletFilterPair | None, boundary_mode: str) -> FeatureVector:
    split = wavelet.split_erp(erp, levels, filters, boundary_mode=boundary_mode)
    fv = extract_feature_vector(split, erp.meta, registry, channels=erp.channels,
                                subject_id=erp.subject_id, class_label=erp.class_label)
    missing = int(np.count_nonzero(np.isnan(fv.values)))
    logger.verbose(f'Extracted {fv.values.size} feature(s) for {erp.subject_id!r}'
                   + (f' ({missing} missing)' if missing else ''))
    return fv
def extract_feature_matrix(erps: typing.Sequence[ErpAverage], registry: typing.Sequence[FeatureDescriptor],
                           levels: int = wavelet.DEFAULT_LEVELS, *, filters: wavelet.WaveletFilterPair | None = None,
                           boundary_mode: str = 'periodic', max_threads: int = 8) -> FeatureMatrix:
    '''Splits and extracts every subject's ERP on a thread pool; rows keep the order of `erps`'''
    if not erps: raise EmptyInputError('No ERP averages to extract features from')
    for e in erps[1:]:
        if (e.channels != erps[0].channels) or (e.meta != erps[0].meta):
            raise ShapeError(f'ERP of {e.subject_id!r} has different channels or sampling metadata than {erps[0].subject_id!r}')
    fm = FeatureMatrix.from_vectors(thread_map(partial(_extract_one, registry=registry, levels=levels, filters=filters,
                                                       boundary_mode=boundary_mode), erps, max_threads))
    logger.terse(f'Feature matrix: {fm.values.shape[0]} subject(s) x {fm.values.shape[1]} feature(s)')
    return fm

def impute_column_means(matrix: np.ndarray, rows: typing.Sequence[int] | np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    '''
        Replaces missing values (NaN) with the column means taken over `rows` (default: all rows)
            Columns with no values among `rows` impute to 0
        Returns the imputed copy and the per-column means
    '''
    m = np.array(matrix, dtype=float)
    ref = m if rows is None else m[np.asarray(rows)]
    present = ~np.isnan(ref)
    counts = present.sum(axis=0)
    sums = np.where(present, ref, 0.).sum(axis=0)
    means = np.divide(sums, counts, out=np.zeros(m.shape[1]), where=counts > 0)
    holes = np.isnan(m)
    m[holes] = np.broadcast_to(means, m.shape)[holes]
    return m, means

def write_feature_matrix(fm: FeatureMatrix, path: Path):
    '''Writes `fm` as CSV: `subject_id,class_label,<electrode>:<feature>...`, missing values as `NaN`'''
    try: fm.to_frame().to_csv(path, index=False, float_format='%.17g', na_rep='NaN', lineterminator='\n')
    except OSError as e:
        raise OutputError(f'Could not write feature matrix to {path}: {e}') from e
def read_feature_matrix(path: Path) -> FeatureMatrix:
    try: df = pd.read_csv(path, dtype={'subject_id': str, 'class_label': str}, keep_default_na=False,
                          na_values=['NaN'], float_precision='round_trip')
    except FileNotFoundError as e:
        raise DataError(f'Feature matrix {path} does not exist', path) from e
    if tuple(df.columns[:2]) != ('subject_id', 'class_label'):
        raise DataError(f'{path} must start with the columns subject_id,class_label', path)
    layout = []
    for c in df.columns[2:]:
        e, sep, f = c.partition(':')
        if not sep: raise DataError(f'Column {c!r} of {path} is not of the form <electrode>:<feature>', path)
        layout.append((e, f))
    try: values = df.iloc[:, 2:].to_numpy(dtype=float)
    except ValueError as e:
        raise DataError(f'Non-numeric feature values in {path}: {e}', path) from e
    return FeatureMatrix(values=values, layout=layout, subject_ids=df['subject_id'].tolist(),
                         class_labels=[l or None for l in df['class_label']])
