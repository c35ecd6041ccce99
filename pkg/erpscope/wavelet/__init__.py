#!/bin/python3

'''
    ERPScope's `wavelet`: Daubechies filters and the multilevel discrete wavelet transform
        used to split ERPs into a low-pass (approximation) and a high-pass (details) part
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger', 'BOUNDARY_MODES', 'DEFAULT_LEVELS',
           'WaveletFilterPair', 'daubechies_filters',
           'WaveletDecomposition', 'dwt_decompose', 'reconstruct', 'reconstruct_lp', 'reconstruct_hp',
           'SplitErp', 'split_erp')

logger = root_logger.getChild('WAV')

from .filters import WaveletFilterPair, daubechies_filters
from .transform import (BOUNDARY_MODES, DEFAULT_LEVELS, WaveletDecomposition,
                        dwt_decompose, reconstruct, reconstruct_lp, reconstruct_hp,
                        SplitErp, split_erp)
