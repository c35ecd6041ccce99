#!/bin/python3

'''
    ERPScope's `feature_bank`: temporal features of the low-pass part, statistical features of
        the high-pass part, spectral features, and the registry-driven per-subject feature vector
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger', 'MISSING',
           'TimeWindow', 'latency', 'abs_amplitude', 'positive_area', 'max_peak_ratio',
           'signal_energy', 'histogram_entropy',
           'IntervalStats', 'zero_crossing_rate', 'derivative_interval_stats',
           'Spectrum', 'spectrum_from_coefficients', 'periodogram', 'spectral_flatness', 'spectral_rolloff',
           'DeformationWidth', 'spectral_deformation_width', 'spectral_centroid', 'spectral_entropy', 'band_power',
           'PARTS', 'KINDS', 'FeatureDescriptor', 'load_registry', 'default_registry', 'parse_registry',
           'FeatureVector', 'FeatureMatrix', 'extract_feature_vector', 'extract_feature_matrix',
           'impute_column_means', 'write_feature_matrix', 'read_feature_matrix')

logger = root_logger.getChild('FB')

MISSING = float('nan') # sentinel for features a signal has no structure (or power) for

from .temporal import (TimeWindow, latency, abs_amplitude, positive_area, max_peak_ratio,
                       signal_energy, histogram_entropy)
from .statistical import IntervalStats, zero_crossing_rate, derivative_interval_stats
from .spectral import (Spectrum, spectrum_from_coefficients, periodogram, spectral_flatness, spectral_rolloff,
                       DeformationWidth, spectral_deformation_width, spectral_centroid, spectral_entropy, band_power)
from .registry import PARTS, KINDS, FeatureDescriptor, load_registry, default_registry, parse_registry
from .extract import (FeatureVector, FeatureMatrix, extract_feature_vector, extract_feature_matrix,
                      impute_column_means, write_feature_matrix, read_feature_matrix)
