#!/bin/python3

'''
    ReliefF feature weighting

    Features are scaled to [0, 1] by their range, so the Manhattan neighbour distance and the
        per-feature differences are both range-normalised. Every sample is a target once; its
        k nearest hits (same class, itself excluded) and k nearest misses are found with ties
        broken by ascending sample index, and each feature accumulates
        mean |miss difference| - mean |hit difference|
'''

#> Imports
from pathlib import Path
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from . import logger
from .dataset import LabeledDataset
from ..util.errors import ParameterError, DataError, OutputError
#</Imports

#> Header >/
__all__ = ('DEFAULT_K', 'WeightVector', 'normalize_by_range', 'relieff_weights', 'select_top_k',
           'write_weights', 'read_weights')

DEFAULT_K = 10

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class WeightVector:
    weights: np.ndarray
    k_neighbors: int | None = None # unknown when read back from a weight file
    layout: tuple[tuple[str, str], ...] | None = None

    def __len__(self) -> int:
        return len(self.weights)

def normalize_by_range(m: np.ndarray) -> np.ndarray:
    '''Scales each column to [0, 1] by its range; constant columns become 0'''
    lo = m.min(axis=0)
    rng = m.max(axis=0) - lo
    return np.divide(m - lo, rng, out=np.zeros_like(m, dtype=float), where=rng > 0)

def relieff_weights(ds: LabeledDataset, k: int = DEFAULT_K) -> WeightVector:
    '''
        Computes ReliefF weights with `k` hits and `k` misses per target
            Raises `ParameterError` if a class has `k` or fewer members, or the dataset holds missing values
    '''
    if (int(k) != k) or (k < 1):
        raise ParameterError(f'k must be a positive integer, got {k}')
    k = int(k)
    if ds.has_missing:
        raise ParameterError('ReliefF needs a dataset without missing values; impute them first')
    counts = ds.class_counts()
    if min(counts) <= k:
        exc = ParameterError(f'Each class needs more than k={k} member(s)')
        exc.add_note(f'Class sizes: {counts[0]} (class 0), {counts[1]} (class 1)')
        raise exc
    x = normalize_by_range(ds.matrix)
    y = ds.labels
    dist = cdist(x, x, 'cityblock')
    acc = np.zeros(ds.n_features)
    for t in range(ds.n_samples):
        order = np.argsort(dist[t], kind='stable') # stable: equal distances keep ascending index order
        same = y[order] == y[t]
        hits = order[same & (order != t)][:k]
        misses = order[~same][:k]
        acc += np.abs(x[misses] - x[t]).mean(axis=0) - np.abs(x[hits] - x[t]).mean(axis=0)
    w = acc / ds.n_samples
    logger.verbose(f'ReliefF (k={k}) over {ds.n_samples} sample(s) x {ds.n_features} feature(s); '
                   f'weights in [{w.min():.4g}, {w.max():.4g}]')
    return WeightVector(weights=w, k_neighbors=k, layout=ds.layout)

def select_top_k(w: WeightVector | np.ndarray, k: int) -> list[int]:
    '''Indices of the `k` largest weights, by descending weight (ties by ascending index)'''
    weights = np.asarray(getattr(w, 'weights', w), dtype=float)
    if (int(k) != k) or not (1 <= k <= len(weights)):
        raise ParameterError(f'k must be within [1, {len(weights)}], got {k}')
    return np.lexsort((np.arange(len(weights)), -weights))[:int(k)].tolist()

def write_weights(w: WeightVector, path: Path):
    '''Writes `feature_index,electrode,feature_name,weight` rows, by descending weight'''
    layout = w.layout if w.layout is not None else tuple(('', f'f{i}') for i in range(len(w)))
    order = select_top_k(w, len(w))
    df = pd.DataFrame({'feature_index': order,
                       'electrode': [layout[i][0] for i in order],
                       'feature_name': [layout[i][1] for i in order],
                       'weight': w.weights[order]})
    try: df.to_csv(path, index=False, float_format='%.17g', lineterminator='\n')
    except OSError as e:
        raise OutputError(f'Could not write weights to {path}: {e}') from e
def read_weights(path: Path) -> WeightVector:
    '''Reads a weight file back into feature-index order'''
    try: df = pd.read_csv(path, dtype={'electrode': str, 'feature_name': str}, keep_default_na=False,
                          float_precision='round_trip')
    except FileNotFoundError as e:
        raise DataError(f'Weight file {path} does not exist', path) from e
    if tuple(df.columns) != ('feature_index', 'electrode', 'feature_name', 'weight'):
        raise DataError(f'{path} must have the columns feature_index,electrode,feature_name,weight', path)
    df = df.sort_values('feature_index', kind='stable')
    if df['feature_index'].tolist() != list(range(len(df))):
        raise DataError(f'{path} does not list every feature index exactly once', path)
    return WeightVector(weights=df['weight'].to_numpy(dtype=float),
                        layout=tuple(zip(df['electrode'], df['feature_name'])))
