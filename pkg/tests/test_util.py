#!/bin/python3

#> Imports
import io
import logging
import tomllib
from pathlib import Path

import pytest

from erpscope.util import errors
from erpscope.util.logger import root_logger, set_console_level
from erpscope.util.parallel import FLock, thread_map
from erpscope.util.singleton.config import Config, dump_toml
from erpscope.util.tools.flattools import flatten_map
from erpscope.util.tools.functools import defaults, DEFAULT
from erpscope.util.tools.hashtools import hash_files, digest_text, stage_seed
#</Imports

#> Header >/
NESTED = {'seed': 3, 'paths': {'work_dir': 'w'}, 'select': {'sizes': [60, 10], 'inner': {'k': 1}}}

def test_flatten():
    flat = flatten_map(NESTED)
    assert flat == {'seed': 3, 'paths.work_dir': 'w', 'select.sizes': [60, 10], 'select.inner.k': 1}
    assert flatten_map(NESTED, None)[('select', 'inner', 'k')] == 1

def test_config_overlays_defaults():
    cfg = Config.load_map({'paths': {'work_dir': 'elsewhere'}}, defaults=NESTED)
    assert cfg['paths.work_dir'] == 'elsewhere'
    assert cfg['seed'] == 3
    assert cfg.is_default('seed') and not cfg.is_default('paths.work_dir')
    assert cfg.section('select') == {'sizes': [60, 10], 'inner.k': 1}
    cfg['seed'] = 4
    assert not cfg.is_default('seed')

def test_config_rejects_unknown_keys():
    with pytest.raises(errors.ConfigurationError) as ei:
        Config.load_map({'paths': {'wrok_dir': 'x'}}, defaults=NESTED)
    assert ei.value.field == 'paths.wrok_dir'

def test_config_malformed_toml(tmp_path: Path):
    p = tmp_path / 'bad.toml'
    p.write_text('seed = = 1\n')
    with pytest.raises(errors.ConfigurationError):
        Config.loadf(p, defaults=NESTED)

def test_dump_toml_reads_back():
    doc = {'seed': 1, 'name': 'x "quoted"', 'flag': True,
           'meta': {'rate_hz': 256.0, 'band': [20.0, 60.0]},
           'classes': {'regular': {'hp_rms_uv': .5}, 'dyslexic': {'hp_rms_uv': 1.5}}}
    assert tomllib.loads(dump_toml(doc, header='test')) == doc
    with pytest.raises(errors.ConfigurationError):
        dump_toml({'x': None})

def test_stage_seed_is_stable():
    assert stage_seed(0, 'synth') == stage_seed(0, 'synth')
    assert stage_seed(0, 'synth') != stage_seed(0, 'train')
    assert stage_seed(0, 'synth') != stage_seed(1, 'synth')
    assert 0 <= stage_seed(12345, 'evaluate') < 2 ** 63

def test_hash_files(tmp_path: Path):
    paths = []
    for i in range(5):
        paths.append(tmp_path / f'f{i}')
        paths[-1].write_text(f'content {i % 2}')
    digests = hash_files(*paths, max_threads=3)
    assert list(digests) == paths
    assert digests[paths[0]] == digests[paths[2]] != digests[paths[1]]
    assert len(digests[paths[0]]) == 48 # sha3-384
    assert digest_text(digests[paths[0]]) == digest_text(hash_files(paths[0])[paths[0]])

def test_thread_map_keeps_order():
    def work(i: int) -> int:
        return i * i
    assert thread_map(work, range(50), 4) == [i * i for i in range(50)]
    assert thread_map(work, [3], 4) == [9]
    assert thread_map(work, [], 4) == []

def test_flock(tmp_path: Path):
    lock = tmp_path / '.lock'
    with FLock(lock, 'first'):
        assert lock.exists()
        with pytest.raises(errors.DataError) as ei:
            with FLock(lock, 'second'): pass
        assert ei.value.path == lock
    assert not lock.exists()
    with FLock(lock): pass

def test_defaults():
    def supplier(a: int = 1, *, b: str = 'x'): ...
    @defaults(supplier)
    def target(a: int = DEFAULT, *, b: str = DEFAULT, c: int = 3):
        return a, b, c
    assert target() == (1, 'x', 3)
    with pytest.raises(TypeError):
        @defaults(supplier)
        def bad(z: int = DEFAULT): ...

def test_error_hierarchy():
    assert issubclass(errors.LengthError, errors.ParameterError)
    assert issubclass(errors.ParameterError, ValueError)
    assert issubclass(errors.OutputError, OSError)
    e = errors.ConfigurationError('bad', 'select.sizes')
    assert isinstance(e, ValueError) and (e.field == 'select.sizes')
    assert errors.ConvergenceError('cap', .5).violation == .5

def test_flock_single_attempt(tmp_path: Path):
    lock = tmp_path / '.lock'
    with FLock(lock, 'first') as held:
        assert held.held and held.acquire()
        assert not FLock(lock).acquire(release_on_exit=False)
        assert lock.read_text().endswith('first')
    other = FLock(lock)
    assert other.acquire(release_on_exit=False)
    other.release()
    with pytest.raises(TypeError):
        other.release()

def test_console_level():
    console, logfile = logging.StreamHandler(io.StringIO()), logging.NullHandler()
    for h in (console, logfile): root_logger.addHandler(h)
    try:
        set_console_level('verbose')
        assert console.level == logging.getLevelNamesMapping()['VERBOSE']
        assert logfile.level == logging.NOTSET
        set_console_level(logging.WARNING)
        assert console.level == logging.WARNING
        with pytest.raises(ValueError):
            set_console_level('loud')
    finally:
        for h in (console, logfile): root_logger.removeHandler(h)

def test_custom_levels():
    assert logging.TRACE < logging.DEBUG < logging.VERBOSE < logging.INFO < logging.TERSE < logging.WARNING
    assert callable(root_logger.getChild('X').terse)
