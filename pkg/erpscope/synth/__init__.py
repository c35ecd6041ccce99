#!/bin/python3

'''
    ERPScope's `synth`: seeded two-class synthetic ERP datasets with planted,
        configurable class differences
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger',
           'ClassParams', 'SynthConfig', 'benchmark_meta', 'default_channels',
           'default_dyslexia_scenario', 'hp_only_scenario', 'load_scenario',
           'pink_noise', 'band_noise',
           'ComponentDraw', 'SyntheticSubject', 'SyntheticDataset',
           'draw_components', 'component_template', 'generate_subject', 'generate_dataset', 'write_dataset')

logger = root_logger.getChild('SYN')

from .config import (ClassParams, SynthConfig, benchmark_meta, default_channels,
                     default_dyslexia_scenario, hp_only_scenario, load_scenario)
from .noise import pink_noise, band_noise
from .generate import (ComponentDraw, SyntheticSubject, SyntheticDataset,
                       draw_components, component_template, generate_subject, generate_dataset, write_dataset)
