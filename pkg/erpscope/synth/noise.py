#!/bin/python3

'''Seeded coloured-noise generators, shaped in the frequency domain'''

#> Imports
import numpy as np
from scipy import fft

from ..util.errors import ParameterError
#</Imports

#> Header >/
__all__ = ('pink_noise', 'band_noise')

def _shape(white: np.ndarray, gain: np.ndarray, rms: float) -> np.ndarray:
    x = fft.irfft(fft.rfft(white) * gain, n=len(white))
    sd = x.std()
    if (rms == 0) or (sd == 0): return np.zeros_like(x)
    return (x - x.mean()) * (rms / sd)

def pink_noise(n: int, rate_hz: float, rms: float, rng: np.random.Generator) -> np.ndarray:
    '''`n` samples of zero-mean 1/f noise scaled to `rms`'''
    if n < 2: raise ParameterError(f'Noise needs at least 2 samples, got {n}')
    if rms < 0: raise ParameterError(f'rms must be nonnegative, got {rms}')
    freqs = fft.rfftfreq(n, 1. / rate_hz)
    gain = np.zeros_like(freqs)
    gain[1:] = 1. / np.sqrt(freqs[1:]) # power ~ 1/f
    return _shape(rng.standard_normal(n), gain, rms)

def band_noise(n: int, rate_hz: float, band: tuple[float, float], rms: float, rng: np.random.Generator) -> np.ndarray:
    '''`n` samples of white noise restricted to `band` = [lo, hi] Hz, scaled to `rms`'''
    if n < 2: raise ParameterError(f'Noise needs at least 2 samples, got {n}')
    if rms < 0: raise ParameterError(f'rms must be nonnegative, got {rms}')
    lo, hi = band
    if not (0 <= lo < hi <= rate_hz / 2):
        raise ParameterError(f'Noise band [{lo}, {hi}] Hz must satisfy 0 <= lo < hi <= {rate_hz / 2:g}')
    freqs = fft.rfftfreq(n, 1. / rate_hz)
    return _shape(rng.standard_normal(n), ((freqs >= lo) & (freqs <= hi)).astype(float), rms)
