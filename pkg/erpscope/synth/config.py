#!/bin/python3

'''
    Synthetic scenario configuration

    A scenario describes two classes of subjects by the distributions of their ERP components
        (a P150 and a P300 Gaussian bump) and of their high-frequency band noise. Electrodes outside of
        `effect_electrodes` always draw from the first class's distributions, so only the masked
        electrodes carry a class difference
'''

#> Imports
import typing
import tomllib
from pathlib import Path
from types import MappingProxyType
from dataclasses import dataclass, field, fields, replace

from ..roi import load_layout
from ..signal_core import CLASS_LABELS, SamplingMeta
from ..util.errors import ParameterError, ConfigurationError
from ..util.singleton.config import dump_toml
#</Imports

#> Header >/
__all__ = ('ClassParams', 'SynthConfig', 'benchmark_meta', 'default_channels',
           'default_dyslexia_scenario', 'hp_only_scenario', 'load_scenario')

_dc = dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)

@_dc
class ClassParams:
    '''Per-class component distributions: means and (subject-level) standard deviations'''
    p150_latency_ms: float = 150.
    p150_latency_sd_ms: float = 10.
    p150_amplitude_uv: float = 5.
    p150_amplitude_sd_uv: float = 1.
    p150_width_ms: float = 25.
    p300_latency_ms: float = 300.
    p300_latency_sd_ms: float = 15.
    p300_amplitude_uv: float = 10.
    p300_amplitude_sd_uv: float = 1.5
    p300_width_ms: float = 60.
    hp_band_hz: tuple[float, float] = (20., 60.)
    hp_rms_uv: float = .5

    def __post_init__(self):
        object.__setattr__(self, 'hp_band_hz', tuple(map(float, self.hp_band_hz)))
        for f in fields(self):
            if f.name.endswith(('_sd_ms', '_sd_uv', '_rms_uv')) and (getattr(self, f.name) < 0):
                raise ParameterError(f'{f.name} must be nonnegative, got {getattr(self, f.name)}')
            if f.name.endswith('_width_ms') and not (getattr(self, f.name) > 0):
                raise ParameterError(f'{f.name} must be positive, got {getattr(self, f.name)}')
        if (len(self.hp_band_hz) != 2) or not (0 <= self.hp_band_hz[0] < self.hp_band_hz[1]):
            raise ParameterError(f'hp_band_hz must be [lo, hi] with 0 <= lo < hi, got {list(self.hp_band_hz)}')

    def serialize_to_dict(self) -> dict:
        return {f.name: (list(getattr(self, f.name)) if f.name == 'hp_band_hz' else getattr(self, f.name))
                for f in fields(self)}
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown: raise ConfigurationError(f'Unknown class parameter(s): {", ".join(unknown)}', unknown[0])
        return cls(**d)

def benchmark_meta() -> SamplingMeta:
    '''1.75 s epochs at 256 Hz: 448 samples, 64 of them (250 ms) before stimulus onset'''
    return SamplingMeta(rate_hz=256., pre_stimulus_samples=64, post_stimulus_samples=384)
def default_channels() -> tuple[str, ...]:
    return load_layout().labels

@_dc
class SynthConfig:
    n_subjects_per_class: int = 16
    trials_per_subject: int = 40
    meta: SamplingMeta = field(default_factory=benchmark_meta)
    channels: tuple[str, ...] = field(default_factory=default_channels)
    classes: typing.Mapping[str, ClassParams] = field(default_factory=lambda: {l: ClassParams() for l in CLASS_LABELS})
    effect_electrodes: tuple[str, ...] = ()
    pink_rms_uv: float = 5.
    jitter_sd_ms: float = 10.
    incorrect_rate: float = .05
    condition: str = 'word'
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'channels', tuple(self.channels))
        object.__setattr__(self, 'effect_electrodes', tuple(self.effect_electrodes))
        object.__setattr__(self, 'classes', MappingProxyType(dict(self.classes)))
        if self.n_subjects_per_class < 1:
            raise ParameterError(f'n_subjects_per_class must be positive, got {self.n_subjects_per_class}')
        if self.trials_per_subject < 1:
            raise ParameterError(f'trials_per_subject must be positive, got {self.trials_per_subject}')
        if not self.channels: raise ParameterError('A scenario needs at least one channel')
        if len(set(self.channels)) != len(self.channels): raise ParameterError('Channel labels must be unique')
        stray = sorted(set(self.effect_electrodes) - set(self.channels))
        if stray: raise ParameterError(f'Effect electrode(s) {", ".join(stray)} are not scenario channels')
        if set(self.classes) != set(CLASS_LABELS):
            raise ParameterError(f'Scenario classes must be exactly {", ".join(CLASS_LABELS)}, got {", ".join(sorted(self.classes))}')
        span_ms = self.meta.post_stimulus_samples * 1000. / self.meta.rate_hz
        nyquist = self.meta.rate_hz / 2
        for label,cp in self.classes.items():
            for comp in ('p150', 'p300'):
                lat = getattr(cp, f'{comp}_latency_ms')
                if not (0 <= lat <= span_ms):
                    raise ParameterError(f'{label} {comp.upper()} latency {lat} ms lies outside the post-stimulus span [0, {span_ms:g}] ms')
            if cp.hp_band_hz[1] > nyquist:
                raise ParameterError(f'{label} HP band upper edge {cp.hp_band_hz[1]} Hz exceeds Nyquist ({nyquist:g} Hz)')
        if (self.pink_rms_uv < 0) or (self.jitter_sd_ms < 0):
            raise ParameterError('pink_rms_uv and jitter_sd_ms must be nonnegative')
        if not (0 <= self.incorrect_rate < 1):
            raise ParameterError(f'incorrect_rate must lie in [0, 1), got {self.incorrect_rate}')

    @property
    def baseline(self) -> ClassParams:
        '''The distributions every unmasked electrode draws from'''
        return self.classes[CLASS_LABELS[0]]
    @property
    def n_subjects(self) -> int:
        return self.n_subjects_per_class * len(CLASS_LABELS)
    def with_seed(self, seed: int) -> typing.Self:
        return replace(self, seed=int(seed))

    def serialize_to_dict(self) -> dict:
        return {
            'n_subjects_per_class': self.n_subjects_per_class,
            'trials_per_subject': self.trials_per_subject,
            'pink_rms_uv': self.pink_rms_uv,
            'jitter_sd_ms': self.jitter_sd_ms,
            'incorrect_rate': self.incorrect_rate,
            'condition': self.condition,
            'seed': self.seed,
            'channels': list(self.channels),
            'effect_electrodes': list(self.effect_electrodes),
            'meta': self.meta.serialize_to_dict(),
            'classes': {l: self.classes[l].serialize_to_dict() for l in CLASS_LABELS},
        }
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        d = dict(d)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown: raise ConfigurationError(f'Unknown scenario key(s): {", ".join(unknown)}', unknown[0])
        if 'meta' in d: d['meta'] = SamplingMeta.deserialize_from_dict(d['meta'])
        if 'classes' in d:
            classes = {}
            for l,cp in d['classes'].items():
                try: classes[l] = ClassParams.deserialize_from_dict(cp)
                except ConfigurationError as e:
                    e.field = f'classes.{l}.{e.field}'
                    raise
            d['classes'] = classes
        return cls(**d)
    def to_toml(self) -> str:
        return dump_toml(self.serialize_to_dict(), header='ERPScope synthetic scenario')

def _left_effect_electrodes(channels: typing.Sequence[str]) -> tuple[str, ...]:
    layout = load_layout()
    return tuple(c for c in channels if (c in layout) and (layout[c].hemisphere == 'left')
                 and (layout[c].region in {'anterior', 'posterior'}))

def default_dyslexia_scenario(seed: int = 0) -> SynthConfig:
    '''
        The benchmark scenario
            Regular readers peak at 300 ms / 10 uV, dyslexic readers at 380 ms / 6 uV with stronger 20-60 Hz noise;
            the differences sit on the left anterior and left posterior electrodes only
            16 subjects per class, 40 trials each, in 448-sample epochs at 256 Hz
    '''
    channels = default_channels()
    return SynthConfig(channels=channels, effect_electrodes=_left_effect_electrodes(channels), seed=seed,
                       classes={'regular': ClassParams(),
                                'dyslexic': ClassParams(p300_latency_ms=380., p300_amplitude_uv=6., hp_rms_uv=1.5)})
def hp_only_scenario(seed: int = 0) -> SynthConfig:
    '''As the benchmark scenario, but the classes differ only in their 20-60 Hz noise power'''
    channels = default_channels()
    return SynthConfig(channels=channels, effect_electrodes=_left_effect_electrodes(channels), seed=seed,
                       classes={'regular': ClassParams(), 'dyslexic': ClassParams(hp_rms_uv=2.)})

def load_scenario(path: Path) -> SynthConfig:
    '''Reads a scenario written by `SynthConfig.to_toml()` (or by hand in the same layout)'''
    try: doc = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f'Malformed scenario {path}: {e}', 'scenario') from e
    except OSError as e:
        raise ConfigurationError(f'Could not read scenario {path}: {e}', 'scenario') from e
    try: return SynthConfig.deserialize_from_dict(doc)
    except ParameterError as e:
        raise ConfigurationError(f'Invalid scenario {path}: {e}', 'scenario') from e
