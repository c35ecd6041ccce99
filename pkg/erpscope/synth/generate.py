#!/bin/python3

'''
    Synthetic two-class ERP datasets

    Subject `i` draws everything from its own generator, seeded with (scenario seed, i), so a dataset
        is identical whichever order (or thread) its subjects are generated in
'''

#> Imports
import typing
from pathlib import Path
from functools import partial
from dataclasses import dataclass

import numpy as np

from . import logger
from .noise import pink_noise, band_noise
from .config import ClassParams, SynthConfig
from ..signal_core import CLASS_LABELS, SamplingMeta, Epoch, Event, ContinuousRecording, io
from ..util.parallel import thread_map
from ..util.errors import OutputError
#</Imports

#> Header >/
__all__ = ('ComponentDraw', 'SyntheticSubject', 'SyntheticDataset',
           'draw_components', 'component_template', 'generate_subject', 'generate_dataset', 'write_dataset')

class ComponentDraw(typing.NamedTuple):
    '''One subject's component latencies (ms) and amplitudes (uV)'''
    p150_latency_ms: float
    p150_amplitude_uv: float
    p300_latency_ms: float
    p300_amplitude_uv: float

    @classmethod
    def means(cls, params: ClassParams) -> typing.Self:
        return cls(params.p150_latency_ms, params.p150_amplitude_uv, params.p300_latency_ms, params.p300_amplitude_uv)

def draw_components(params: ClassParams, rng: np.random.Generator) -> ComponentDraw:
    return ComponentDraw(float(rng.normal(params.p150_latency_ms, params.p150_latency_sd_ms)),
                         float(rng.normal(params.p150_amplitude_uv, params.p150_amplitude_sd_uv)),
                         float(rng.normal(params.p300_latency_ms, params.p300_latency_sd_ms)),
                         float(rng.normal(params.p300_amplitude_uv, params.p300_amplitude_sd_uv)))

def component_template(params: ClassParams, meta: SamplingMeta, draw: ComponentDraw | None = None,
                       shift_ms: float = 0.) -> np.ndarray:
    '''
        The noiseless waveform of one electrode: a P150 and a P300 Gaussian bump
            Uses the class means unless a subject's `draw` is given; `shift_ms` delays both components
    '''
    if draw is None: draw = ComponentDraw.means(params)
    t = meta.time_axis_ms()
    def bump(amp: float, lat: float, width: float) -> np.ndarray:
        return amp * np.exp(-.5 * ((t - lat - shift_ms) / width) ** 2)
    return (bump(draw.p150_amplitude_uv, draw.p150_latency_ms, params.p150_width_ms)
            + bump(draw.p300_amplitude_uv, draw.p300_latency_ms, params.p300_width_ms))

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class SyntheticSubject:
    subject_id: str
    class_label: str
    epochs: list[Epoch]
    baseline_draw: ComponentDraw # unmasked electrodes
    effect_draw: ComponentDraw # masked electrodes

    def to_recording(self) -> ContinuousRecording:
        '''Lays the trials end to end, with one event at each trial's stimulus onset'''
        meta = self.epochs[0].meta
        events = tuple(Event(i * meta.total_samples + meta.pre_stimulus_samples, e.condition, e.correct)
                       for i,e in enumerate(self.epochs))
        return ContinuousRecording(channels=self.epochs[0].channels, rate_hz=meta.rate_hz, events=events,
                                   samples=np.hstack([e.channel_values for e in self.epochs]))

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class SyntheticDataset:
    config: SynthConfig
    subjects: list[SyntheticSubject]

    @property
    def labels(self) -> np.ndarray:
        return np.array([CLASS_LABELS.index(s.class_label) for s in self.subjects], dtype=int)

def generate_subject(cfg: SynthConfig, index: int) -> SyntheticSubject:
    '''Generates subject `index` (class-major: the first `n_subjects_per_class` are the first class)'''
    label = CLASS_LABELS[index // cfg.n_subjects_per_class]
    rng = np.random.default_rng([cfg.seed, index])
    base, effect = cfg.baseline, cfg.classes[label]
    base_draw = draw_components(base, rng)
    effect_draw = draw_components(effect, rng) # always drawn, to keep the generator stream class-independent
    if label == CLASS_LABELS[0]: effect_draw = base_draw
    masked = np.array([c in cfg.effect_electrodes for c in cfg.channels])[:, None]
    meta, n, nch = cfg.meta, cfg.meta.total_samples, len(cfg.channels)
    epochs = []
    for _ in range(cfg.trials_per_subject):
        shift = float(rng.normal(0., cfg.jitter_sd_ms))
        clean = np.where(masked, component_template(effect, meta, effect_draw, shift),
                         component_template(base, meta, base_draw, shift))
        pink = np.vstack([pink_noise(n, meta.rate_hz, cfg.pink_rms_uv, rng) for _ in range(nch)])
        base_hp = np.vstack([band_noise(n, meta.rate_hz, base.hp_band_hz, base.hp_rms_uv, rng) for _ in range(nch)])
        effect_hp = np.vstack([band_noise(n, meta.rate_hz, effect.hp_band_hz, effect.hp_rms_uv, rng) for _ in range(nch)])
        correct = bool(rng.random() >= cfg.incorrect_rate)
        epochs.append(Epoch(channels=cfg.channels, channel_values=clean + pink + np.where(masked, effect_hp, base_hp),
                            meta=meta, condition=cfg.condition, correct=correct))
    sid = f'S{index + 1:03d}'
    logger.trace(f'{sid} ({label}): P300 {effect_draw.p300_latency_ms:.1f} ms / {effect_draw.p300_amplitude_uv:.2f} uV on masked electrodes')
    return SyntheticSubject(subject_id=sid, class_label=label, epochs=epochs,
                            baseline_draw=base_draw, effect_draw=effect_draw)

def generate_dataset(cfg: SynthConfig, *, max_threads: int = 8) -> SyntheticDataset:
    '''Generates every subject of `cfg`; the result depends only on `cfg` (including its seed)'''
    subjects = thread_map(partial(generate_subject, cfg), range(cfg.n_subjects), max_threads)
    logger.terse(f'Generated {len(subjects)} subject(s) x {cfg.trials_per_subject} trial(s) '
                 f'x {len(cfg.channels)} channel(s) (seed {cfg.seed})')
    return SyntheticDataset(config=cfg, subjects=subjects)

def _write_subject(s: SyntheticSubject, out_dir: Path, continuous: bool) -> list[Path]:
    if continuous:
        path = out_dir / f'{s.subject_id}.csv'
        io.write_recording(s.to_recording(), path)
        return [path, io.events_path(path)]
    sdir = out_dir / s.subject_id
    sdir.mkdir(exist_ok=True)
    paths = [sdir / f'trial-{i + 1:03d}.csv' for i in range(len(s.epochs))]
    for e,p in zip(s.epochs, paths): io.write_epoch(e, p)
    return paths
def write_dataset(ds: SyntheticDataset, out_dir: Path, *, continuous: bool = False, max_threads: int = 8) -> list[Path]:
    '''
        Writes `ds` in the signal_core input formats, plus `subjects.csv` and the scenario as `scenario.toml`
            Subjects are pre-epoched directories of trial files, or with `continuous`, recordings with events files
        Returns every written path
    '''
    try: out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f'Could not create {out_dir}: {e}') from e
    paths = [p for ps in thread_map(partial(_write_subject, out_dir=out_dir, continuous=continuous), ds.subjects, max_threads)
             for p in ps]
    io.write_subjects(((s.subject_id, s.class_label) for s in ds.subjects), out_dir / 'subjects.csv')
    try: (out_dir / 'scenario.toml').write_text(ds.config.to_toml())
    except OSError as e:
        raise OutputError(f'Could not write {out_dir / "scenario.toml"}: {e}') from e
    paths.extend((out_dir / 'subjects.csv', out_dir / 'scenario.toml'))
    logger.verbose(f'Wrote {len(ds.subjects)} subject(s) to {out_dir}')
    return paths
