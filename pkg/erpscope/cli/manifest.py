#!/bin/python3

'''
    Stage manifests

    Every stage artifact gets a `<artifact>.manifest.json` beside it, recording the stage, the digests
        of its inputs and outputs, its parameters, its seed and the tool version. Manifests hold no
        timestamps, so rerunning a stage on the same inputs rewrites the same bytes
'''

#> Imports
import json
import typing
from pathlib import Path

from . import logger
from ..util.errors import OutputError, DataError
from ..util.tools.hashtools import hash_files, digest_text
#</Imports

#> Header >/
__all__ = ('manifest_path', 'write_manifest', 'read_manifest')

def manifest_path(artifact: Path) -> Path:
    return artifact.with_name(f'{artifact.name}.manifest.json')

def _relative(p: Path, root: Path) -> str:
    try: return p.resolve().relative_to(root.resolve()).as_posix()
    except ValueError: return p.resolve().as_posix()
def _digests(paths: typing.Iterable[Path], root: Path, max_threads: int) -> dict[str, str]:
    files = sorted({p for p in paths if p.is_file()}, key=lambda p: _relative(p, root))
    return {_relative(p, root): digest_text(d) for p,d in hash_files(*files, max_threads=max_threads).items()}

def write_manifest(artifact: Path, stage: str, *, inputs: typing.Iterable[Path] = (), outputs: typing.Iterable[Path] = (),
                   parameters: typing.Mapping[str, typing.Any], seed: int | None, version: str, root: Path,
                   max_threads: int = 8) -> Path:
    '''
        Writes the manifest of `artifact`
            Paths are recorded relative to `root` (normally the configuration file's directory)
    '''
    doc = {
        'stage': stage,
        'artifact': _relative(artifact, root),
        'inputs': _digests(inputs, root, max_threads),
        'outputs': _digests(outputs, root, max_threads),
        'parameters': dict(parameters),
        'seed': seed,
        'version': version,
    }
    path = manifest_path(artifact)
    try: path.write_text(json.dumps(doc, sort_keys=True, indent=1) + '\n')
    except OSError as e:
        raise OutputError(f'Could not write manifest {path}: {e}') from e
    logger.verbose(f'{stage}: manifest for {len(doc["inputs"])} input(s) and {len(doc["outputs"])} output(s) at {path}')
    return path
def read_manifest(artifact: Path) -> dict[str, typing.Any]:
    path = manifest_path(artifact)
    try: return json.loads(path.read_text())
    except FileNotFoundError as e:
        raise DataError(f'Manifest {path} does not exist', path) from e
    except json.JSONDecodeError as e:
        raise DataError(f'Malformed manifest {path}: {e}', path) from e
