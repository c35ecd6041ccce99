#!/bin/python3

'''
    Zero-phase FIR filtering and anti-aliased decimation

    Filters are Hamming-windowed sinc designs (`scipy.signal.firwin`), applied forward and then
        backward over an odd-reflected copy of the signal so that component latencies are preserved
'''

#> Imports
import math

import numpy as np
from scipy import signal as sps

from . import logger
from ..util.errors import ParameterError, LengthError
#</Imports

#> Header >/
__all__ = ('numtaps_for', 'design_bandpass', 'bandpass_filter', 'decimate')

def numtaps_for(rate_hz: float, transition_hz: float) -> int:
    '''Returns the (odd) Hamming-window tap count needed for a transition band of `transition_hz`'''
    n = math.ceil(3.3 * rate_hz / transition_hz)
    return n if n % 2 else n + 1

def design_bandpass(rate_hz: float, lo_hz: float, hi_hz: float, transition_hz: float | None = None) -> np.ndarray:
    '''
        Designs band-pass taps for [`lo_hz`, `hi_hz`]; a `lo_hz` of 0 designs a low-pass filter
            `transition_hz` defaults to `lo_hz`, or to a quarter of `hi_hz` when `lo_hz` is 0
    '''
    if not (0 <= lo_hz < hi_hz < rate_hz / 2):
        raise ParameterError(f'Band edges must satisfy 0 <= lo < hi < rate/2, got lo={lo_hz}, hi={hi_hz}, rate={rate_hz}')
    if transition_hz is None: transition_hz = lo_hz if lo_hz > 0 else hi_hz / 4
    if transition_hz <= 0:
        raise ParameterError(f'transition_hz must be positive, got {transition_hz}')
    numtaps = numtaps_for(rate_hz, transition_hz)
    if lo_hz == 0:
        return sps.firwin(numtaps, hi_hz, window='hamming', fs=rate_hz)
    return sps.firwin(numtaps, (lo_hz, hi_hz), window='hamming', pass_zero=False, fs=rate_hz)

def _odd_reflect(x: np.ndarray, padlen: int) -> np.ndarray:
    if padlen < 1: return x
    head = 2 * x[..., :1] - x[..., padlen:0:-1]
    tail = 2 * x[..., -1:] - x[..., -2:-padlen-2:-1]
    return np.concatenate((head, x, tail), axis=-1)
def _zero_phase(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    padlen = min(len(taps) - 1, x.shape[-1] - 1)
    xp = _odd_reflect(x, padlen)
    kern = taps.reshape((1,) * (x.ndim - 1) + (-1,))
    y = sps.fftconvolve(xp, kern, mode='same', axes=-1)
    y = sps.fftconvolve(y[..., ::-1], kern, mode='same', axes=-1)[..., ::-1]
    return y[..., padlen:padlen + x.shape[-1]]

def bandpass_filter(signal: np.ndarray, rate_hz: float, lo_hz: float, hi_hz: float, *, transition_hz: float | None = None) -> np.ndarray:
    '''
        Zero-phase band-pass filters `signal` along its last axis (so a channels x samples matrix filters per channel)
            The output has the same shape as the input
        Raises `ParameterError` on invalid band edges, and `LengthError` if the signal is not longer than the filter
    '''
    x = np.asarray(signal, dtype=float)
    taps = design_bandpass(rate_hz, lo_hz, hi_hz, transition_hz)
    if x.shape[-1] <= len(taps):
        exc = LengthError(f'Signal of {x.shape[-1]} sample(s) is not longer than the {len(taps)}-tap filter')
        exc.add_note(f'Band {lo_hz}-{hi_hz} Hz at {rate_hz} Hz; a wider transition_hz shortens the filter')
        raise exc
    logger.trace(f'Band-pass {lo_hz}-{hi_hz} Hz at {rate_hz} Hz with {len(taps)} taps over {x.shape}')
    return _zero_phase(x, taps)

def decimate(signal: np.ndarray, rate_hz: float, factor: int) -> tuple[np.ndarray, float]:
    '''
        Low-passes `signal` (along its last axis) at 0.4x the new Nyquist frequency, then keeps every `factor`th sample
            Returns the decimated signal and its new rate
    '''
    if (int(factor) != factor) or (factor < 1):
        raise ParameterError(f'Decimation factor must be a positive integer, got {factor}')
    factor = int(factor)
    x = np.asarray(signal, dtype=float)
    if factor == 1: return x.copy(), rate_hz
    new_rate = rate_hz / factor
    taps = sps.firwin(20 * factor + 1, 0.4 * new_rate / 2, window='hamming', fs=rate_hz)
    logger.trace(f'Decimating by {factor} ({rate_hz} Hz -> {new_rate} Hz) with a {len(taps)}-tap anti-alias filter')
    return _zero_phase(x, taps)[..., ::factor], new_rate
