#!/bin/python3

'''Statistical features, computed on the high-pass part of an ERP'''

#> Imports
import typing

import numpy as np
from scipy import stats

from ..util.errors import ParameterError, InsufficientStructureError
#</Imports

#> Header >/
__all__ = ('IntervalStats', 'zero_crossing_rate', 'extrema_indices', 'derivative_interval_stats')

class IntervalStats(typing.NamedTuple):
    mean: float
    sd: float
    skewness: float

def zero_crossing_rate(hp: np.ndarray) -> float:
    '''Fraction of consecutive sample pairs whose signs differ strictly (zeros never cross)'''
    x = np.asarray(hp, dtype=float)
    if x.size < 2:
        raise ParameterError(f'Zero-crossing rate needs at least 2 samples, got {x.size}')
    return float(np.count_nonzero(x[1:] * x[:-1] < 0) / (x.size - 1))

def extrema_indices(x: np.ndarray) -> np.ndarray:
    '''Sample indices where the first difference changes sign (local extrema; plateaus are not counted)'''
    d = np.diff(np.asarray(x, dtype=float))
    return np.flatnonzero(d[:-1] * d[1:] < 0) + 1

def derivative_interval_stats(hp: np.ndarray) -> IntervalStats:
    '''
        Mean, (population) standard deviation and skewness of the intervals, in samples,
            between consecutive local extrema
        Skewness is 0 when the intervals do not vary
        Raises `InsufficientStructureError` when there are fewer than 3 intervals
    '''
    intervals = np.diff(extrema_indices(hp)).astype(float)
    if intervals.size < 3:
        raise InsufficientStructureError(f'Found {intervals.size} interval(s) between extrema, at least 3 are needed')
    sd = float(np.std(intervals))
    skew = float(stats.skew(intervals, bias=True)) if sd > 0 else 0.
    return IntervalStats(float(np.mean(intervals)), sd, skew)
