#!/bin/python3

'''Shared fixtures and hypothesis profiles'''

#> Imports
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings, HealthCheck

from erpscope import synth
from erpscope.signal_core import SamplingMeta
#</Imports

#> Header >/
settings.register_profile('ci', max_examples=200, deadline=None, suppress_health_check=(HealthCheck.too_slow,))
settings.register_profile('dev', max_examples=30, deadline=None)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'dev'))

@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)

@pytest.fixture
def meta() -> SamplingMeta:
    return synth.benchmark_meta()

@pytest.fixture
def small_scenario() -> synth.SynthConfig:
    '''Six electrodes, five subjects per class, a strong left-hemisphere P300 difference'''
    channels = ('Fp1', 'Fp2', 'C3', 'C4', 'P7', 'P8')
    return synth.SynthConfig(n_subjects_per_class=5, trials_per_subject=6, channels=channels,
                             effect_electrodes=('Fp1', 'P7'), incorrect_rate=0., seed=7,
                             classes={'regular': synth.ClassParams(),
                                      'dyslexic': synth.ClassParams(p300_latency_ms=380., p300_amplitude_uv=4.)})

@pytest.fixture
def write_toml(tmp_path: Path):
    def write(text: str, name: str = 'pipeline.toml') -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path
    return write
