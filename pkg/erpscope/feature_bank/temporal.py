#!/bin/python3

'''Temporal features, computed on the low-pass part of an ERP'''

#> Imports
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..signal_core import SamplingMeta
from ..util.errors import ParameterError
#</Imports

#> Header >/
__all__ = ('TimeWindow', 'latency', 'abs_amplitude', 'positive_area', 'max_peak_ratio',
           'signal_energy', 'histogram_entropy')

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class TimeWindow:
    '''A span of post-stimulus time, in milliseconds (both ends inclusive)'''
    start_ms: float
    end_ms: float

    def __post_init__(self):
        if not (self.start_ms < self.end_ms):
            raise ParameterError(f'Window start ({self.start_ms} ms) must precede its end ({self.end_ms} ms)')

    def indices(self, meta: SamplingMeta) -> range:
        '''
            Returns the epoch sample indices that fall within this window
                Raises `ParameterError` if the window leaves the post-stimulus span or holds no samples
        '''
        span = meta.post_stimulus_samples * 1000. / meta.rate_hz
        if (self.start_ms < 0) or (self.end_ms > span):
            raise ParameterError(f'Window {self} is outside the post-stimulus span [0, {span}] ms')
        idx = meta.window_indices(self.start_ms, self.end_ms)
        if not idx:
            raise ParameterError(f'Window {self} holds no samples at {meta.rate_hz} Hz')
        return idx
    def crop(self, x: np.ndarray, meta: SamplingMeta) -> np.ndarray:
        idx = self.indices(meta)
        return np.asarray(x)[..., idx.start:idx.stop]

    def __str__(self) -> str:
        return f'{self.start_ms:g}-{self.end_ms:g} ms'

def _nonempty(x: np.ndarray, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.size == 0: raise ParameterError(f'{what} of an empty sequence is undefined')
    return x

def _peak(lp: np.ndarray, meta: SamplingMeta, window: TimeWindow) -> tuple[int, float]:
    idx = window.indices(meta)
    seg = np.asarray(lp, dtype=float)[idx.start:idx.stop]
    i = int(np.argmax(seg)) # earliest on ties
    return idx.start + i, float(seg[i])

def latency(lp: np.ndarray, meta: SamplingMeta, window: TimeWindow) -> float:
    '''Time (ms after stimulus) of the largest sample within `window`; the earliest wins ties'''
    return float(meta.index_to_ms(_peak(lp, meta, window)[0]))

def abs_amplitude(lp: np.ndarray) -> float:
    '''Largest absolute sample value'''
    return float(np.max(np.abs(_nonempty(lp, 'Absolute amplitude'))))

def positive_area(lp: np.ndarray, meta: SamplingMeta, window: TimeWindow) -> float:
    '''Sum of the positive parts of the samples within `window` (microvolt-samples)'''
    return float(np.sum(np.clip(window.crop(lp, meta), 0, None)))

def max_peak_ratio(lp: np.ndarray, meta: SamplingMeta, window: TimeWindow) -> float:
    '''
        The largest sample within `window` divided by its time (in seconds) after stimulus onset
            Later peaks of equal size score lower
        Raises `ParameterError` if the window starts at (or before) stimulus onset
    '''
    if window.start_ms <= 0:
        raise ParameterError(f'Window {window} must start after stimulus onset')
    i, peak = _peak(lp, meta, window)
    return peak / (float(meta.index_to_ms(i)) / 1000.)

def signal_energy(x: np.ndarray) -> float:
    '''Total energy (sum of squared samples)'''
    x = _nonempty(x, 'Energy')
    return float(np.dot(x, x))

def histogram_entropy(x: np.ndarray, bins: int = 16) -> float:
    '''Base-10 entropy of an equal-width histogram of `x` over [min, max]'''
    if (int(bins) != bins) or (bins < 1):
        raise ParameterError(f'bins must be a positive integer, got {bins}')
    counts, _ = np.histogram(_nonempty(x, 'Histogram entropy'), bins=int(bins))
    return float(stats.entropy(counts, base=10))
