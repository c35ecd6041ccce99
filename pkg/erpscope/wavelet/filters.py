#!/bin/python3

'''
    Daubechies orthonormal filter pairs

    Filters are derived by spectral factorisation rather than typed in: the half-band polynomial
        P(y) = sum_k C(p-1+k, k) y^k is factored, each root is mapped back to the z-plane, and the
        minimum-phase roots (inside the unit circle) are combined with p zeros at z = -1
'''

#> Imports
import math
import typing
import functools
from dataclasses import dataclass

import numpy as np

from . import logger
from ..util.errors import ParameterError
#</Imports

#> Header >/
__all__ = ('WaveletFilterPair', 'daubechies_filters')

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True, eq=False)
class WaveletFilterPair:
    '''An orthonormal low-pass filter and its quadrature-mirror high-pass filter'''
    lowpass: np.ndarray
    highpass: np.ndarray
    vanishing_moments: int

    @classmethod
    def from_lowpass(cls, h: np.ndarray, vanishing_moments: int) -> typing.Self:
        h = np.array(h, dtype=float)
        g = ((-1.) ** np.arange(len(h))) * h[::-1]
        h.flags.writeable = False
        g.flags.writeable = False
        return cls(lowpass=h, highpass=g, vanishing_moments=vanishing_moments)

    @property
    def length(self) -> int:
        return len(self.lowpass)

    def violations(self) -> dict[str, float]:
        '''Returns the worst deviation from each filter-bank invariant'''
        h, g = self.lowpass, self.highpass
        n = np.arange(self.length)
        ortho = max(abs(np.dot(h[:self.length - 2*m], h[2*m:]) - (m == 0)) for m in range(self.length // 2))
        moments = max((abs(np.dot(g, n.astype(float) ** k)) / max(1., float(np.sum(np.abs(g) * n ** k))))
                      for k in range(self.vanishing_moments))
        return {'sum': abs(h.sum() - math.sqrt(2)), 'orthonormality': ortho, 'moments': moments}
    def verify(self, tol: float = 1e-10):
        '''Raises `ParameterError` if any invariant is violated by more than `tol`'''
        bad = {k: v for k,v in self.violations().items() if v > tol}
        if not bad: return
        exc = ParameterError(f'Filter pair violates {", ".join(bad)}')
        for k,v in bad.items(): exc.add_note(f'{k}: {v:.3g} > {tol:.3g}')
        raise exc

@functools.cache
def daubechies_filters(order: int = 4) -> WaveletFilterPair:
    '''Derives (and verifies) the Daubechies filter pair with `order` vanishing moments and `2*order` taps'''
    if (int(order) != order) or not (1 <= order <= 6):
        raise ParameterError(f'Daubechies order must be an integer in [1, 6], got {order}')
    p = int(order)
    zeros = [-1.] * p
    if p > 1:
        # np.roots expects the highest power first
        for y in np.roots([math.comb(p - 1 + k, k) for k in reversed(range(p))]):
            zeros.extend(z for z in np.roots([1., -(2. - 4.*y), 1.]) if abs(z) < 1)
    h = np.real(np.poly(zeros))
    pair = WaveletFilterPair.from_lowpass(h * (math.sqrt(2) / h.sum()), p)
    pair.verify()
    logger.trace(f'Derived db{p} low-pass filter: {pair.lowpass.tolist()}')
    return pair
