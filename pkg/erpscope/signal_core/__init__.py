#!/bin/python3

'''
    ERPScope's `signal_core`: turns continuous or pre-epoched recordings
        into clean, baseline-corrected, trial-averaged ERP waveforms
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger',
           'CLASS_LABELS', 'SamplingMeta', 'Event', 'ContinuousRecording', 'Epoch', 'ErpAverage',
           'design_bandpass', 'bandpass_filter', 'decimate',
           'SkippedEvent', 'SegmentResult', 'RejectResult',
           'segment_epochs', 'baseline_correct', 'reject_trials',
           'average_erp', 'grand_average', 'average_by_condition',
           'io')

logger = root_logger.getChild('SIG')

from .types import CLASS_LABELS, SamplingMeta, Event, ContinuousRecording, Epoch, ErpAverage
from .filters import design_bandpass, bandpass_filter, decimate
from .epochs import (SkippedEvent, SegmentResult, RejectResult,
                     segment_epochs, baseline_correct, reject_trials,
                     average_erp, grand_average, average_by_condition)
from . import io
