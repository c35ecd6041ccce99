#!/bin/python3

'''
    ERPScope's `cli`: the batch front end, running the pipeline stages one at a time
        (or all in order) over persisted, manifest-stamped artifacts
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger',
           'DEFAULT_CONFIG', 'PipelineConfig', 'default_config_map', 'load_config',
           'manifest_path', 'write_manifest', 'read_manifest',
           'STAGES', 'PIPELINE_ORDER', 'run_pipeline',
           'build_parser', 'run_subcommand', 'main')

logger = root_logger.getChild('CLI')

from .config import DEFAULT_CONFIG, PipelineConfig, default_config_map, load_config
from .manifest import manifest_path, write_manifest, read_manifest
from .stages import STAGES, PIPELINE_ORDER, run_pipeline
from .main import build_parser, run_subcommand, main
