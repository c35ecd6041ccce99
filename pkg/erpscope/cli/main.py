#!/bin/python3

'''
    The `erpscope` command

    Exit status is 0 on success, 1 on data errors (missing or malformed inputs, failed writes)
        and 2 on configuration errors
'''

#> Imports
import typing
import argparse
from pathlib import Path

from . import logger
from .config import PipelineConfig, load_config
from .stages import STAGES, PIPELINE_ORDER
from ..__entrypoint__ import VERSION, __setup__
from ..util.logger import set_console_level
from ..util.parallel import FLock
from ..util.errors import ConfigurationError, ConvergenceError, DataError
#</Imports

#> Header >/
__all__ = ('LOCK_NAME', 'EXIT_OK', 'EXIT_DATA', 'EXIT_CONFIG', 'build_parser', 'run_subcommand', 'main')

LOCK_NAME = '.erpscope.lock'
EXIT_OK, EXIT_DATA, EXIT_CONFIG = 0, 1, 2
VERBOSITY = ('VERBOSE', 'DEBUG', 'TRACE')

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=Path, required=True, metavar='PATH', help='Pipeline configuration (TOML)')
    common.add_argument('--seed', type=int, default=None, help='Overrides the configured global seed')
    common.add_argument('--stage-dir', type=Path, default=None, metavar='PATH', help='Overrides paths.work_dir')
    chatter = common.add_mutually_exclusive_group()
    chatter.add_argument('-v', '--verbose', action='count', default=0, help='Show progress on the console (twice: debug, thrice: trace)')
    chatter.add_argument('-q', '--quiet', action='store_true', help='Only show stage summaries and problems on the console')
    common.add_argument('--log-config', type=Path, default=None, metavar='PATH',
                        help='Logging configuration (default: the first logging.toml found)')
    parser = argparse.ArgumentParser(prog='erpscope', description='ERP feature extraction, selection, classification and ROI analysis')
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    subs = parser.add_subparsers(dest='subcommand', required=True, metavar='SUBCOMMAND')
    for name in (*PIPELINE_ORDER, 'pipeline'):
        sp = subs.add_parser(name, parents=(common,), help=STAGES[name].__doc__.strip().splitlines()[0])
        if name in {'evaluate', 'pipeline'}:
            sp.add_argument('--leaky', action='store_true', help='Select features on every subject before cross-validating')
    return parser

def _log_notes(exc: BaseException):
    for note in getattr(exc, '__notes__', ()): logger.info(f'  {note}')
def run_subcommand(name: str, config: PipelineConfig) -> int:
    '''Runs stage `name` under the work directory's lock, returning the exit status'''
    stage = STAGES.get(name, None)
    if stage is None:
        logger.error(f'Unknown subcommand {name!r}, expected one of {", ".join(STAGES)}')
        return EXIT_CONFIG
    try:
        config.work_dir.mkdir(parents=True, exist_ok=True)
        with FLock(config.work_dir / LOCK_NAME, owner=name):
            written = stage(config)
    except ConfigurationError as e:
        logger.error(f'Configuration error in {e.field or "the configuration"}: {e}')
        _log_notes(e)
        return EXIT_CONFIG
    except (DataError, ConvergenceError, OSError, ValueError) as e:
        path = getattr(e, 'path', None) or getattr(e, 'filename', None)
        logger.error(f'{name} failed: {e}' + ('' if path is None else f' [{path}]'))
        _log_notes(e)
        return EXIT_DATA
    logger.terse(f'{name}: wrote {len(written)} file(s)')
    return EXIT_OK

def main(argv: typing.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    __setup__(args.log_config)
    if args.quiet: set_console_level('TERSE')
    elif args.verbose: set_console_level(VERBOSITY[min(args.verbose, len(VERBOSITY)) - 1])
    try:
        config = load_config(args.config)
        config.set_overrides(seed=args.seed, stage_dir=(None if args.stage_dir is None else args.stage_dir.resolve()),
                             leaky=getattr(args, 'leaky', False))
    except ConfigurationError as e:
        logger.error(f'Configuration error in {e.field or "the configuration"}: {e}')
        _log_notes(e)
        return EXIT_CONFIG
    logger.verbose(f'erpscope {VERSION}: {args.subcommand} with {args.config} (seed {config.seed})')
    return run_subcommand(args.subcommand, config)
