#!/bin/python3

'''
    Spectral features

    A `Spectrum` holds the one-sided DFT bins 0..N//2 of an N-sample signal: `magnitudes` are |X(k)|,
        `psd` is |X(k)|^2 / N, and `freqs_hz` are k * rate / N (so the last bin is the Nyquist frequency
        when N is even)
'''

#> Imports
import typing
from dataclasses import dataclass

import numpy as np
from scipy import fft, stats

from ..util.errors import ParameterError, UndefinedInputError
#</Imports

#> Header >/
__all__ = ('Spectrum', 'spectrum_from_coefficients', 'periodogram',
           'spectral_flatness', 'spectral_rolloff', 'DeformationWidth', 'spectral_deformation_width',
           'spectral_centroid', 'spectral_entropy', 'band_power')

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True, eq=False)
class Spectrum:
    magnitudes: np.ndarray
    psd: np.ndarray
    freqs_hz: np.ndarray
    rate_hz: float
    n: int # length of the time-domain signal

    def total_energy(self) -> float:
        '''Time-domain energy recovered from the one-sided bins (Parseval)'''
        if self.n == 1: return float(self.psd[0])
        inner = self.psd[1:-1] if self.n % 2 == 0 else self.psd[1:]
        edge = self.psd[-1] if self.n % 2 == 0 else 0.
        return float(self.psd[0] + 2 * np.sum(inner) + edge)

def spectrum_from_coefficients(coeffs: np.ndarray, n: int, rate_hz: float) -> Spectrum:
    '''
        Builds a `Spectrum` from DFT coefficients of an `n`-sample signal
            `coeffs` may hold the full DFT or only its first `n//2 + 1` bins
    '''
    coeffs = np.asarray(coeffs)
    nbins = n // 2 + 1
    if coeffs.shape[-1] < nbins:
        raise ParameterError(f'{coeffs.shape[-1]} coefficient(s) given, but a {n}-sample signal has {nbins} one-sided bins')
    mags = np.abs(coeffs[:nbins])
    return Spectrum(magnitudes=mags, psd=mags ** 2 / n, freqs_hz=np.arange(nbins) * (rate_hz / n), rate_hz=rate_hz, n=n)

def periodogram(x: np.ndarray, rate_hz: float) -> Spectrum:
    '''The one-sided periodogram of `x`, by FFT'''
    x = np.asarray(x, dtype=float)
    if x.size == 0: raise ParameterError('The periodogram of an empty sequence is undefined')
    return spectrum_from_coefficients(fft.rfft(x), x.size, rate_hz)

def _total(v: np.ndarray, what: str) -> float:
    tot = float(np.sum(v))
    if not (tot > 0): raise UndefinedInputError(f'{what} is undefined for a spectrum with no power')
    return tot

def spectral_flatness(spec: Spectrum) -> float:
    '''
        Geometric mean over arithmetic mean of the magnitude bins, in [0, 1]
            Any empty bin makes the result 0
    '''
    m = spec.magnitudes
    _total(m, 'Spectral flatness')
    if np.any(m == 0): return 0.
    return min(float(stats.gmean(m) / np.mean(m)), 1.)

def spectral_rolloff(spec: Spectrum, fraction: float = .7) -> float:
    '''The lowest frequency at which the cumulative PSD reaches `fraction` of the total'''
    if not (0 < fraction < 1):
        raise ParameterError(f'Roll-off fraction must lie strictly between 0 and 1, got {fraction}')
    tot = _total(spec.psd, 'Spectral roll-off')
    cum = np.cumsum(spec.psd)
    return float(spec.freqs_hz[np.argmax(cum >= (fraction - 1e-12) * tot)])

class DeformationWidth(typing.NamedTuple):
    deformation: float
    width: float

def spectral_deformation_width(spec: Spectrum) -> DeformationWidth:
    '''
        From the PSD moments M_n = sum P_i f_i^n:
            deformation = sqrt(M2/M0) / (M1/M0), width = sqrt(M2/M0 - (M1/M0)^2)
    '''
    m0 = _total(spec.psd, 'Spectral deformation')
    m1 = float(np.dot(spec.psd, spec.freqs_hz))
    if not (m1 > 0): raise UndefinedInputError('Spectral deformation is undefined when all power sits at 0 Hz')
    m2 = float(np.dot(spec.psd, spec.freqs_hz ** 2))
    mean, msq = m1 / m0, m2 / m0
    return DeformationWidth(np.sqrt(msq) / mean, np.sqrt(max(msq - mean ** 2, 0.)))

def spectral_centroid(spec: Spectrum) -> float:
    '''Magnitude-weighted mean frequency'''
    return float(np.dot(spec.freqs_hz, spec.magnitudes) / _total(spec.magnitudes, 'Spectral centroid'))

def spectral_entropy(spec: Spectrum) -> float:
    '''Base-2 entropy of the PSD normalised to a probability distribution'''
    _total(spec.psd, 'Spectral entropy')
    return float(stats.entropy(spec.psd, base=2))

def band_power(spec: Spectrum, lo_hz: float, hi_hz: float) -> float:
    '''Summed PSD over the half-open band [lo_hz, hi_hz)'''
    if not (0 <= lo_hz < hi_hz):
        raise ParameterError(f'Band edges must satisfy 0 <= lo < hi, got lo={lo_hz}, hi={hi_hz}')
    return float(np.sum(spec.psd[(spec.freqs_hz >= lo_hz) & (spec.freqs_hz < hi_hz)]))
