#!/bin/python3

'''
    Multilevel discrete wavelet transform with periodic or symmetric boundaries

    Each level is one orthonormal analysis step: a[k] = sum_n h[n] x[(2k+n) mod N], and likewise
        d[k] with the high-pass filter. Odd-length inputs to a level are extended by repeating their
        last sample, and the extension is dropped again on inversion
    Every function accepts a single signal or a stack of signals (transformed along the last axis)
'''

#> Imports
import typing
import functools
from dataclasses import dataclass

import numpy as np

from . import logger
from .filters import WaveletFilterPair, daubechies_filters
from ..util.errors import ParameterError
#</Imports

#> Header >/
__all__ = ('BOUNDARY_MODES', 'DEFAULT_LEVELS', 'WaveletDecomposition',
           'dwt_decompose', 'reconstruct', 'reconstruct_lp', 'reconstruct_hp',
           'SplitErp', 'split_erp')

BOUNDARY_MODES = ('periodic', 'symmetric')
DEFAULT_LEVELS = 5

@functools.lru_cache(maxsize=64)
def _analysis_matrix(n: int, lowpass: bytes, highpass: bytes) -> np.ndarray:
    h = np.frombuffer(lowpass)
    g = np.frombuffer(highpass)
    half = n // 2
    w = np.zeros((n, n))
    for k in range(half):
        cols = (2*k + np.arange(len(h))) % n
        np.add.at(w[k], cols, h)
        np.add.at(w[half + k], cols, g)
    w.flags.writeable = False
    return w
def _matrix(n: int, filters: WaveletFilterPair) -> np.ndarray:
    return _analysis_matrix(n, filters.lowpass.tobytes(), filters.highpass.tobytes())

def _even(x: np.ndarray) -> np.ndarray:
    if x.shape[-1] % 2 == 0: return x
    return np.concatenate((x, x[..., -1:]), axis=-1)
def _analyze(x: np.ndarray, filters: WaveletFilterPair) -> tuple[np.ndarray, np.ndarray]:
    xe = _even(x)
    half = xe.shape[-1] // 2
    coeffs = xe @ _matrix(xe.shape[-1], filters).T
    return coeffs[..., :half], coeffs[..., half:]
def _synthesize(a: np.ndarray, d: np.ndarray, length: int, filters: WaveletFilterPair) -> np.ndarray:
    coeffs = np.concatenate((a, d), axis=-1)
    return (coeffs @ _matrix(coeffs.shape[-1], filters))[..., :length]

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class WaveletDecomposition:
    '''
        Per-level approximation and detail coefficients (index 0 holds level 1)
            `lengths[k]` is the length of the signal that level k+1 decomposed
            `signal` keeps the decomposed input, so `reconstruct_hp` can subtract the low-pass part from it
    '''
    approximation_coeffs: list[np.ndarray]
    detail_coeffs: list[np.ndarray]
    levels: int
    original_length: int
    boundary_mode: str
    lengths: list[int]
    filters: WaveletFilterPair
    signal: np.ndarray # the input, before any symmetric extension

    def approximation(self, level: int) -> np.ndarray:
        self._check_level(level)
        return self.approximation_coeffs[level - 1]
    def detail(self, level: int) -> np.ndarray:
        self._check_level(level)
        return self.detail_coeffs[level - 1]
    def _check_level(self, level: int):
        if not (1 <= level <= self.levels):
            raise ParameterError(f'Level must be within [1, {self.levels}], got {level}')

    def coefficient_energy(self) -> np.ndarray:
        '''Sum of squared coefficients (final approximation plus every detail level)'''
        return (np.sum(self.approximation_coeffs[-1] ** 2, axis=-1)
                + sum(np.sum(d ** 2, axis=-1) for d in self.detail_coeffs))

def dwt_decompose(signal: np.ndarray, levels: int = DEFAULT_LEVELS, filters: WaveletFilterPair | None = None,
                  *, boundary_mode: typing.Literal[*BOUNDARY_MODES] = 'periodic') -> WaveletDecomposition:
    '''
        Decomposes `signal` (or each row of a stack of signals) over `levels` levels
            `filters` defaults to db4
            Raises `ParameterError` if the signal is shorter than `2**levels` samples
    '''
    if filters is None: filters = daubechies_filters(4)
    x = np.asarray(signal, dtype=float)
    original = x
    n = x.shape[-1]
    if (int(levels) != levels) or (levels < 1):
        raise ParameterError(f'levels must be a positive integer, got {levels}')
    if n < 2 ** levels:
        exc = ParameterError(f'A signal of {n} sample(s) is too short for {levels} level(s)')
        exc.add_note(f'At least {2 ** levels} samples are needed')
        raise exc
    if boundary_mode not in BOUNDARY_MODES:
        raise ParameterError(f'Unknown boundary mode {boundary_mode!r}, expected one of {", ".join(BOUNDARY_MODES)}')
    if boundary_mode == 'symmetric':
        x = np.concatenate((x, x[..., ::-1]), axis=-1)
    approx = []
    details = []
    lengths = []
    a = x
    for _ in range(int(levels)):
        lengths.append(a.shape[-1])
        a, d = _analyze(a, filters)
        approx.append(a)
        details.append(d)
    logger.trace(f'Decomposed {x.shape} over {levels} level(s) ({boundary_mode}); lengths {lengths}')
    return WaveletDecomposition(approximation_coeffs=approx, detail_coeffs=details, levels=int(levels),
                                original_length=n, boundary_mode=boundary_mode, lengths=lengths, filters=filters,
                                signal=original)

def _invert(dec: WaveletDecomposition, level: int, keep_details: bool) -> np.ndarray:
    a = dec.approximation(level)
    for k in reversed(range(level)):
        d = dec.detail_coeffs[k] if keep_details else np.zeros_like(dec.detail_coeffs[k])
        a = _synthesize(a, d, dec.lengths[k], dec.filters)
    return a[..., :dec.original_length]

def reconstruct(dec: WaveletDecomposition) -> np.ndarray:
    '''Full inverse transform'''
    return _invert(dec, dec.levels, True)
def reconstruct_lp(dec: WaveletDecomposition, level: int | None = None) -> np.ndarray:
    '''
        Inverse transform of the approximation at `level` (default: the deepest) with every detail zeroed
            Raises `ParameterError` if `level` is out of range
    '''
    return _invert(dec, dec.levels if level is None else level, False)
def reconstruct_hp(dec: WaveletDecomposition) -> np.ndarray:
    '''The decomposed signal minus its deepest low-pass reconstruction'''
    return dec.signal - reconstruct_lp(dec, dec.levels)

class SplitErp(typing.NamedTuple):
    lp: np.ndarray # channels x samples
    hp: np.ndarray

def split_erp(erp: 'ErpAverage | np.ndarray', levels: int = DEFAULT_LEVELS, filters: WaveletFilterPair | None = None,
              *, boundary_mode: typing.Literal[*BOUNDARY_MODES] = 'periodic') -> SplitErp:
    '''
        Splits every channel of `erp` into a low-pass and a high-pass part
            The high-pass part is the channel minus the low-pass part, so lp + hp reproduces each channel
    '''
    values = np.asarray(getattr(erp, 'channel_values', erp), dtype=float)
    dec = dwt_decompose(values, levels, filters, boundary_mode=boundary_mode)
    return SplitErp(reconstruct_lp(dec, dec.levels), reconstruct_hp(dec))
