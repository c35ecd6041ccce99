#!/bin/python3

'''Common utilities for hashing artifacts and deriving reproducible seeds'''

#> Imports
import base64
import hashlib
import multiprocessing.pool
from pathlib import Path
from functools import partial

from .functools import defaults, DEFAULT
#</Imports

#> Header >/
__all__ = ('ALGORITHM_DEFAULT', 'digest_text',
           'hash_file', 'hash_files', 'stage_seed')

ALGORITHM_DEFAULT = 'sha3_384'

def digest_text(digest: bytes) -> str:
    '''Renders a digest as Base85 text (compact, and safe in JSON and TOML)'''
    return base64.b85encode(digest).decode()

def hash_file(file: Path | str, hash_method: str = ALGORITHM_DEFAULT) -> bytes:
    '''Opens and hashes a single `Path` (or string coerced into a `Path`)'''
    with Path(file).open('rb') as f:
        return hashlib.file_digest(f, hash_method).digest()
@defaults(hash_file)
def hash_files(*files: Path | str, max_threads: int = 8, hash_method: str = DEFAULT) -> dict[Path | str, bytes]:
    '''
        Opens and hashes multiple `Path`s (or strings coerced into `Path`s) using multithreading
            Note that, in the returned `dict`, keys that were strings will remain strings
    '''
    procs = min(len(files), max_threads)
    hfunc = partial(hash_file, hash_method=hash_method)
    if procs < 2: return dict(zip(files, map(hfunc, files)))
    with multiprocessing.pool.ThreadPool(procs) as mp:
        return dict(zip(files, mp.map(hfunc, files)))

def stage_seed(seed: int, stage: str) -> int:
    '''
        Derives a stage's seed from the global `seed` and the stage's name
            The derivation is stable across processes and platforms (unlike `hash()`)
    '''
    return int.from_bytes(hashlib.sha256(f'{seed}\x00{stage}'.encode()).digest()[:8], 'big') >> 1
