#!/bin/python3

'''Segmentation, baseline correction, trial rejection and averaging'''

#> Imports
import typing
from collections import Counter

import numpy as np

from . import logger
from .types import SamplingMeta, ContinuousRecording, Epoch, ErpAverage, ClassLabel
from ..util.errors import ParameterError, ShapeError, EmptyInputError
#</Imports

#> Header >/
__all__ = ('SkippedEvent', 'SegmentResult', 'RejectResult',
           'segment_epochs', 'baseline_correct', 'reject_trials',
           'average_erp', 'grand_average', 'average_by_condition')

class SkippedEvent(typing.NamedTuple):
    event_index: int
    sample_index: int
    reason: str
class SegmentResult(typing.NamedTuple):
    epochs: list[Epoch]
    skipped: list[SkippedEvent]
class RejectResult(typing.NamedTuple):
    kept: list[Epoch]
    rejected: Counter

def segment_epochs(rec: ContinuousRecording, meta: SamplingMeta) -> SegmentResult:
    '''
        Cuts one epoch per event from the window [event - pre, event + post)
            Events too close to either end of the recording are skipped and reported, not raised
    '''
    if meta.rate_hz != rec.rate_hz:
        raise ShapeError(f'Epoch metadata rate ({meta.rate_hz} Hz) does not match the recording ({rec.rate_hz} Hz)')
    epochs = []
    skipped = []
    for i,ev in enumerate(rec.events):
        start = ev.sample_index - meta.pre_stimulus_samples
        stop = ev.sample_index + meta.post_stimulus_samples
        if start < 0:
            skipped.append(SkippedEvent(i, ev.sample_index, 'too close to start'))
        elif stop > rec.n_samples:
            skipped.append(SkippedEvent(i, ev.sample_index, 'too close to end'))
        else:
            epochs.append(Epoch(channels=rec.channels, channel_values=rec.samples[:, start:stop].copy(),
                                meta=meta, condition=ev.condition, correct=ev.correct))
            continue
        logger.info(f'Skipped event #{i} at sample {ev.sample_index}: {skipped[-1].reason}')
    return SegmentResult(epochs, skipped)

def baseline_correct(epoch: Epoch) -> Epoch:
    '''Subtracts each channel's pre-stimulus mean from the whole channel'''
    pre = epoch.meta.pre_stimulus_samples
    if pre < 1:
        raise ParameterError('Baseline correction needs at least one pre-stimulus sample')
    vals = epoch.channel_values
    return Epoch(channels=epoch.channels, channel_values=vals - vals[:, :pre].mean(axis=1, keepdims=True),
                 meta=epoch.meta, condition=epoch.condition, correct=epoch.correct)

def reject_trials(epochs: typing.Iterable[Epoch], amplitude_threshold_uv: float = 100.) -> RejectResult:
    '''
        Drops epochs with an incorrect behavioral response, then epochs where any sample exceeds +/-`amplitude_threshold_uv`
            Each rejected epoch is counted under exactly one reason (`'behavioral'` is checked first)
    '''
    if not (amplitude_threshold_uv > 0):
        raise ParameterError(f'Amplitude threshold must be positive, got {amplitude_threshold_uv}')
    kept = []
    rejected = Counter()
    for ep in epochs:
        if not ep.correct: rejected['behavioral'] += 1
        elif np.any(np.abs(ep.channel_values) > amplitude_threshold_uv): rejected['amplitude'] += 1
        else: kept.append(ep)
    if rejected:
        logger.info(f'Rejected {rejected.total()} trial(s) ({", ".join(f"{r}: {n}" for r,n in sorted(rejected.items()))}), kept {len(kept)}')
    return RejectResult(kept, rejected)

def _check_compatible(items: typing.Sequence[Epoch | ErpAverage], what: str):
    if not items:
        raise EmptyInputError(f'Cannot average an empty list of {what}')
    first = items[0]
    for i,it in enumerate(items[1:], 1):
        if it.meta != first.meta:
            exc = ShapeError(f'{what.capitalize()} #{i} has different sampling metadata')
            exc.add_note(f'Expected {first.meta}, got {it.meta}')
            raise exc
        if it.channels != first.channels:
            raise ShapeError(f'{what.capitalize()} #{i} has a different channel ordering')

def average_erp(epochs: typing.Sequence[Epoch], subject_id: str = '', class_label: ClassLabel = None) -> ErpAverage:
    '''Element-wise mean across `epochs`, which must share sampling metadata and channel ordering'''
    _check_compatible(epochs, 'epochs')
    return ErpAverage(channels=epochs[0].channels, channel_values=np.mean([ep.channel_values for ep in epochs], axis=0),
                      meta=epochs[0].meta, n_trials=len(epochs), subject_id=subject_id, class_label=class_label)

def grand_average(erps: typing.Sequence[ErpAverage]) -> ErpAverage:
    '''
        Unweighted mean across subjects' averages (each subject counts once, whatever its trial count)
            `n_trials` of the result is the total over all subjects
    '''
    _check_compatible(erps, 'averages')
    if len(erps) == 1: return erps[0]
    labels = {e.class_label for e in erps}
    return ErpAverage(channels=erps[0].channels, channel_values=np.mean([e.channel_values for e in erps], axis=0),
                      meta=erps[0].meta, n_trials=sum(e.n_trials for e in erps), subject_id='grand',
                      class_label=labels.pop() if len(labels) == 1 else None)

def average_by_condition(epochs: typing.Iterable[Epoch], subject_id: str = '', class_label: ClassLabel = None) -> dict[str, ErpAverage]:
    '''Averages each condition's epochs separately, keyed (and ordered) by condition'''
    groups = {}
    for ep in epochs: groups.setdefault(ep.condition, []).append(ep)
    return {c: average_erp(groups[c], subject_id, class_label) for c in sorted(groups)}
