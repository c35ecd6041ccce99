#!/bin/python3

'''Recording, epoch, and ERP containers, along with their sampling metadata'''

#> Imports
import math
import typing
from dataclasses import dataclass

import numpy as np

from ..util.errors import ParameterError, ShapeError
#</Imports

#> Header >/
__all__ = ('CLASS_LABELS', 'ClassLabel', 'SamplingMeta', 'Event', 'ContinuousRecording', 'Epoch', 'ErpAverage')

CLASS_LABELS = ('regular', 'dyslexic') # index is the numeric class used by `relieff` and `classifier`
type ClassLabel = typing.Literal['regular', 'dyslexic'] | None

_dc = dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False) # holds arrays, so identity equality

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class SamplingMeta:
    '''
        Sampling rate and epoch geometry
            Sample index `pre_stimulus_samples` of an epoch is stimulus onset (t = 0)
    '''
    rate_hz: float
    pre_stimulus_samples: int
    post_stimulus_samples: int

    def __post_init__(self):
        if not (self.rate_hz > 0):
            raise ParameterError(f'rate_hz must be positive, got {self.rate_hz}')
        if self.pre_stimulus_samples < 0:
            raise ParameterError(f'pre_stimulus_samples must be nonnegative, got {self.pre_stimulus_samples}')
        if self.post_stimulus_samples < 1:
            raise ParameterError(f'post_stimulus_samples must be positive, got {self.post_stimulus_samples}')

    @property
    def total_samples(self) -> int:
        return self.pre_stimulus_samples + self.post_stimulus_samples
    @property
    def duration_s(self) -> float:
        return self.total_samples / self.rate_hz

    def index_to_ms(self, index: int | np.ndarray) -> float | np.ndarray:
        '''Converts an epoch sample index to milliseconds after stimulus onset'''
        return (index - self.pre_stimulus_samples) * 1000. / self.rate_hz
    def window_indices(self, start_ms: float, end_ms: float) -> range:
        '''
            Returns the (inclusive) range of epoch sample indices whose times fall within [start_ms, end_ms]
                May be empty if no sample falls within the window
        '''
        first = self.pre_stimulus_samples + math.ceil(round(start_ms * self.rate_hz / 1000., 9))
        last = self.pre_stimulus_samples + math.floor(round(end_ms * self.rate_hz / 1000., 9))
        return range(max(first, 0), min(last, self.total_samples - 1) + 1)
    def time_axis_ms(self) -> np.ndarray:
        return self.index_to_ms(np.arange(self.total_samples))

    def serialize_to_dict(self) -> dict:
        return {
            'rate_hz': self.rate_hz,
            'pre_stimulus_samples': self.pre_stimulus_samples,
            'post_stimulus_samples': self.post_stimulus_samples,
        }
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        return cls(rate_hz=float(d['rate_hz']), pre_stimulus_samples=int(d['pre_stimulus_samples']),
                   post_stimulus_samples=int(d['post_stimulus_samples']))

class Event(typing.NamedTuple):
    sample_index: int
    condition: str
    correct: bool

@_dc
class ContinuousRecording:
    '''A continuously sampled multichannel recording (microvolts) with its stimulus markers'''
    channels: tuple[str, ...]
    samples: np.ndarray # channels x samples
    rate_hz: float
    events: tuple[Event, ...] = ()

    def __post_init__(self):
        self.channels = tuple(self.channels)
        self.samples = np.asarray(self.samples, dtype=float)
        self.events = tuple(Event(int(e[0]), str(e[1]), bool(e[2])) for e in self.events)
        if self.samples.ndim != 2:
            raise ShapeError(f'samples must be a channels x samples matrix, got {self.samples.ndim} dimension(s)')
        if self.samples.shape[0] != len(self.channels):
            raise ShapeError(f'{len(self.channels)} channel label(s) given for {self.samples.shape[0]} channel row(s)')
        if not (self.rate_hz > 0):
            raise ParameterError(f'rate_hz must be positive, got {self.rate_hz}')
        prev = -1
        for e in self.events:
            if e.sample_index <= prev:
                raise ParameterError(f'Event sample indices must be strictly increasing ({e.sample_index} follows {prev})')
            prev = e.sample_index
        if self.events and not (0 <= self.events[0].sample_index and self.events[-1].sample_index < self.n_samples):
            raise ParameterError(f'Event indices must lie within the recording of {self.n_samples} sample(s)')

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

@_dc
class Epoch:
    '''One trial window: a channels x samples matrix around a stimulus event'''
    channels: tuple[str, ...]
    channel_values: np.ndarray
    meta: SamplingMeta
    condition: str = ''
    correct: bool = True

    def __post_init__(self):
        self.channels = tuple(self.channels)
        self.channel_values = np.asarray(self.channel_values, dtype=float)
        if self.channel_values.shape != (len(self.channels), self.meta.total_samples):
            raise ShapeError(f'Epoch matrix has shape {self.channel_values.shape}, '
                             f'expected {(len(self.channels), self.meta.total_samples)}')

@_dc
class ErpAverage:
    '''A per-channel trial-averaged waveform'''
    channels: tuple[str, ...]
    channel_values: np.ndarray
    meta: SamplingMeta
    n_trials: int
    subject_id: str = ''
    class_label: ClassLabel = None

    def __post_init__(self):
        self.channels = tuple(self.channels)
        self.channel_values = np.asarray(self.channel_values, dtype=float)
        if self.channel_values.shape != (len(self.channels), self.meta.total_samples):
            raise ShapeError(f'ERP matrix has shape {self.channel_values.shape}, '
                             f'expected {(len(self.channels), self.meta.total_samples)}')
        if self.n_trials < 1:
            raise ParameterError(f'n_trials must be at least 1, got {self.n_trials}')
        if self.class_label not in (None, *CLASS_LABELS):
            raise ParameterError(f'Unknown class label {self.class_label!r}')

    @property
    def class_index(self) -> int | None:
        '''The numeric class (0 for regular, 1 for dyslexic), or `None` if unknown'''
        return None if self.class_label is None else CLASS_LABELS.index(self.class_label)
    def channel(self, label: str) -> np.ndarray:
        return self.channel_values[self.channels.index(label)]
