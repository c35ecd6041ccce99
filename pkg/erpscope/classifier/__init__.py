#!/bin/python3

'''
    ERPScope's `classifier`: a soft-margin maximum-margin classifier trained by SMO,
        and repeated cross-validation reported as confusion matrices
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger',
           'KernelSpec', 'TrainedModel', 'train', 'predict', 'predict_many',
           'CVScheme', 'SelectionSpec', 'ConfusionReport', 'cross_validate', 'write_report')

logger = root_logger.getChild('SVM')

from .kernels import KernelSpec
from .smo import TrainedModel, train, predict, predict_many
from .validation import CVScheme, SelectionSpec, ConfusionReport, cross_validate, write_report
