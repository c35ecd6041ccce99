#!/bin/python3

'''Provides the `KernelSpec` class'''

#> Imports
import typing
from dataclasses import dataclass

import numpy as np
from sklearn.metrics.pairwise import pairwise_kernels

from ..util.errors import ParameterError
#</Imports

#> Header >/
__all__ = ('KERNEL_KINDS', 'KernelSpec')

KERNEL_KINDS = ('linear', 'gaussian')

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class KernelSpec:
    '''
        A linear or Gaussian (RBF) kernel
            A Gaussian `gamma` of `None` is resolved to 1/(feature count) at training time
    '''
    kind: typing.Literal[*KERNEL_KINDS] = 'linear'
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ParameterError(f'Unknown kernel {self.kind!r}, expected one of {", ".join(KERNEL_KINDS)}')
        if (self.kind == 'gaussian') and (self.gamma is not None) and not (self.gamma > 0):
            raise ParameterError(f'Gaussian gamma must be positive, got {self.gamma}')

    def resolved(self, n_features: int) -> typing.Self:
        '''Returns this kernel with a default `gamma` filled in for `n_features` features'''
        if (self.kind == 'linear') or (self.gamma is not None): return self
        return type(self)(kind=self.kind, gamma=1. / n_features)
    def gram(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        '''The kernel matrix between the rows of `a` and the rows of `b`'''
        if self.kind == 'linear': return pairwise_kernels(a, b, metric='linear')
        if self.gamma is None:
            raise ParameterError('Gaussian gamma must be resolved before computing a kernel matrix')
        return pairwise_kernels(a, b, metric='rbf', gamma=self.gamma)

    def serialize_to_dict(self) -> dict:
        return {'kind': self.kind, 'gamma': self.gamma}
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        return cls(kind=d.get('kind', 'linear'), gamma=d.get('gamma', None))
