#!/bin/python3

'''ERPScope's `relieff`: nearest hit/miss feature weighting and top-k selection'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger', 'DEFAULT_K',
           'LabeledDataset', 'WeightVector', 'relieff_weights', 'select_top_k',
           'write_weights', 'read_weights', 'render_weight_profile')

logger = root_logger.getChild('RF')

from .dataset import LabeledDataset
from .weights import DEFAULT_K, WeightVector, relieff_weights, select_top_k, write_weights, read_weights
from .plot import render_weight_profile
