#!/bin/python3

#> Imports
from pathlib import Path
from dataclasses import replace

import numpy as np
import pytest
from scipy import fft

from erpscope import synth
from erpscope.synth import ClassParams, SynthConfig
from erpscope.signal_core import io, segment_epochs
from erpscope.util.errors import ParameterError, ConfigurationError
#</Imports

#> Header >/
def quiet(params: ClassParams, **changes) -> ClassParams:
    return replace(params, p150_latency_sd_ms=0., p150_amplitude_sd_uv=0., p300_latency_sd_ms=0.,
                   p300_amplitude_sd_uv=0., hp_rms_uv=0., **changes)

# Noise
def test_pink_noise_slope(rng: np.random.Generator):
    n, rate = 8192, 256.
    x = synth.pink_noise(n, rate, 5., rng)
    assert x.std() == pytest.approx(5.)
    assert abs(x.mean()) < 1e-9
    freqs = fft.rfftfreq(n, 1. / rate)
    power = np.abs(fft.rfft(x)) ** 2
    keep = (freqs >= 1.) & (freqs <= 100.)
    slope = np.polyfit(np.log(freqs[keep]), np.log(power[keep]), 1)[0]
    assert -1.3 <= slope <= -.7

def test_band_noise_stays_in_band(rng: np.random.Generator):
    n, rate = 4096, 256.
    x = synth.band_noise(n, rate, (20., 60.), 1.5, rng)
    assert x.std() == pytest.approx(1.5)
    freqs = fft.rfftfreq(n, 1. / rate)
    power = np.abs(fft.rfft(x)) ** 2
    inside = (freqs >= 20.) & (freqs <= 60.)
    assert power[inside].sum() / power.sum() > 1. - 1e-9

def test_noise_edge_cases(rng: np.random.Generator):
    assert np.array_equal(synth.pink_noise(64, 256., 0., rng), np.zeros(64))
    with pytest.raises(ParameterError):
        synth.pink_noise(1, 256., 1., rng)
    with pytest.raises(ParameterError):
        synth.band_noise(64, 256., (20., 200.), 1., rng)
    with pytest.raises(ParameterError):
        synth.band_noise(64, 256., (20., 60.), -1., rng)

# Scenarios
def test_default_scenario():
    cfg = synth.default_dyslexia_scenario()
    assert len(cfg.channels) == 64 and cfg.n_subjects == 32 and cfg.trials_per_subject == 40
    assert cfg.meta.total_samples == 448
    assert {'Fp1', 'P7', 'O1'} <= set(cfg.effect_electrodes)
    assert not {'C3', 'Cz', 'P8', 'Fp2'} & set(cfg.effect_electrodes)
    assert cfg.classes['dyslexic'].p300_latency_ms == 380.
    hp = synth.hp_only_scenario()
    assert hp.classes['dyslexic'].p300_latency_ms == hp.classes['regular'].p300_latency_ms
    assert hp.classes['dyslexic'].hp_rms_uv > hp.classes['regular'].hp_rms_uv

def test_scenario_validation(small_scenario: SynthConfig):
    with pytest.raises(ParameterError):
        replace(small_scenario, effect_electrodes=('Cz',))
    with pytest.raises(ParameterError):
        replace(small_scenario, classes={'regular': ClassParams()})
    with pytest.raises(ParameterError):
        replace(small_scenario, classes={'regular': ClassParams(), 'dyslexic': ClassParams(p300_latency_ms=2000.)})
    with pytest.raises(ParameterError):
        replace(small_scenario, classes={'regular': ClassParams(), 'dyslexic': ClassParams(hp_band_hz=(20., 200.))})
    with pytest.raises(ParameterError):
        replace(small_scenario, incorrect_rate=1.)
    with pytest.raises(ParameterError):
        ClassParams(p300_width_ms=0.)

def test_scenario_files(tmp_path: Path, small_scenario: SynthConfig):
    path = tmp_path / 'scenario.toml'
    path.write_text(small_scenario.to_toml())
    assert synth.load_scenario(path) == small_scenario
    path.write_text('colour = 1\n' + small_scenario.to_toml())
    with pytest.raises(ConfigurationError) as ei:
        synth.load_scenario(path)
    assert ei.value.field == 'colour'
    path.write_text('n_subjects_per_class = 0\n')
    with pytest.raises(ConfigurationError) as ei:
        synth.load_scenario(path)
    assert ei.value.field == 'scenario'
    path.write_text('[classes.dyslexic]\np400_latency_ms = 1.0\n')
    with pytest.raises(ConfigurationError) as ei:
        synth.load_scenario(path)
    assert ei.value.field == 'classes.dyslexic.p400_latency_ms'
    with pytest.raises(ConfigurationError):
        synth.load_scenario(tmp_path / 'missing.toml')

# Generation
def test_noiseless_subjects_match_their_templates(small_scenario: SynthConfig):
    cfg = replace(small_scenario, pink_rms_uv=0., jitter_sd_ms=0.,
                  classes={l: quiet(p) for l,p in small_scenario.classes.items()})
    ds = synth.generate_dataset(cfg, max_threads=1)
    regular = synth.component_template(cfg.classes['regular'], cfg.meta)
    dyslexic = synth.component_template(cfg.classes['dyslexic'], cfg.meta)
    masked = [c in cfg.effect_electrodes for c in cfg.channels]
    for s in ds.subjects:
        for ep in s.epochs:
            for row,is_masked in zip(ep.channel_values, masked):
                expected = dyslexic if (is_masked and s.class_label == 'dyslexic') else regular
                assert np.allclose(row, expected)
    assert regular.max() == pytest.approx(10., rel=1e-3)

def test_component_template(meta):
    t = synth.component_template(ClassParams(), meta)
    assert meta.index_to_ms(int(np.argmax(t))) == pytest.approx(300., abs=1000. / 256)
    later = synth.component_template(ClassParams(), meta, shift_ms=40.)
    assert meta.index_to_ms(int(np.argmax(later))) == pytest.approx(340., abs=1000. / 256)

def test_generation_is_deterministic(small_scenario: SynthConfig):
    a = synth.generate_dataset(small_scenario, max_threads=1)
    b = synth.generate_dataset(small_scenario, max_threads=4)
    assert [s.subject_id for s in a.subjects] == [f'S{i:03d}' for i in range(1, 11)]
    assert a.labels.tolist() == [0] * 5 + [1] * 5
    for x,y in zip(a.subjects, b.subjects):
        assert x.effect_draw == y.effect_draw
        assert all(np.array_equal(e.channel_values, f.channel_values) for e,f in zip(x.epochs, y.epochs))
    lone = synth.generate_subject(small_scenario, 7)
    assert np.array_equal(lone.epochs[3].channel_values, a.subjects[7].epochs[3].channel_values)
    other = synth.generate_subject(small_scenario.with_seed(8), 7)
    assert not np.array_equal(other.epochs[0].channel_values, lone.epochs[0].channel_values)

def test_regular_subjects_share_one_draw(small_scenario: SynthConfig):
    ds = synth.generate_dataset(small_scenario)
    for s in ds.subjects:
        assert (s.effect_draw == s.baseline_draw) == (s.class_label == 'regular')

def test_class_difference_sits_on_masked_electrodes(small_scenario: SynthConfig):
    ds = synth.generate_dataset(small_scenario)
    at = small_scenario.meta.pre_stimulus_samples + 77 # ~300 ms
    def mean_at(label: str, channel: str) -> float:
        ch = small_scenario.channels.index(channel)
        return float(np.mean([e.channel_values[ch, at] for s in ds.subjects if s.class_label == label for e in s.epochs]))
    masked = mean_at('regular', 'P7') - mean_at('dyslexic', 'P7')
    unmasked = mean_at('regular', 'P8') - mean_at('dyslexic', 'P8')
    assert masked > 3.
    assert abs(unmasked) < masked / 2

def test_incorrect_trials(small_scenario: SynthConfig):
    ds = synth.generate_dataset(replace(small_scenario, incorrect_rate=.5, n_subjects_per_class=2, trials_per_subject=40))
    flags = [e.correct for s in ds.subjects for e in s.epochs]
    assert 0 < flags.count(False) < len(flags)

# Files
def test_write_epoch_dataset(tmp_path: Path, small_scenario: SynthConfig):
    ds = synth.generate_dataset(small_scenario)
    paths = synth.write_dataset(ds, tmp_path / 'in')
    assert len(paths) == 10 * 6 + 2
    assert io.read_subjects(tmp_path / 'in' / 'subjects.csv')[5] == ('S006', 'dyslexic')
    epochs = io.read_epoch_dir(tmp_path / 'in' / 'S002')
    assert len(epochs) == 6
    assert np.allclose(epochs[2].channel_values, ds.subjects[1].epochs[2].channel_values)
    assert synth.load_scenario(tmp_path / 'in' / 'scenario.toml') == small_scenario

def test_write_continuous_dataset(tmp_path: Path, small_scenario: SynthConfig):
    ds = synth.generate_dataset(small_scenario)
    paths = synth.write_dataset(ds, tmp_path / 'in', continuous=True)
    assert len(paths) == 10 * 2 + 2
    rec = io.read_recording(tmp_path / 'in' / 'S003.csv')
    assert rec.samples.shape == (6, 6 * 448)
    res = segment_epochs(rec, small_scenario.meta)
    assert not res.skipped and len(res.epochs) == 6
    for got,want in zip(res.epochs, ds.subjects[2].epochs):
        assert np.allclose(got.channel_values, want.channel_values)
        assert got.correct == want.correct
