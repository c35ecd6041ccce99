#!/bin/python3

'''Utilities for parallelism and concurrency'''

#> Imports
import os
import types
import atexit
import typing
import functools
import multiprocessing.pool
from pathlib import Path
from threading import RLock
from contextlib import AbstractContextManager

from .errors import DataError
#</Imports

#> Header >/
__all__ = ('mlock', 'FLock', 'thread_map')

def mlock(f: typing.Callable) -> typing.Callable:
    '''Wraps `f` in a `with` statement for its first parameter's (probably an instance or class) `._lock` attr'''
    @functools.wraps(f)
    def mlocked(self, *args, **kwargs) -> typing.Any:
        with self._lock: return f(self, *args, **kwargs)
    return mlocked

def thread_map(func: typing.Callable, items: typing.Sequence, max_threads: int = 8) -> list:
    '''
        Maps `func` over `items` on a thread pool, keeping the order of `items`
            Falls back to a plain loop when fewer than two threads would be used
    '''
    procs = min(len(items), max_threads)
    if procs < 2: return list(map(func, items))
    with multiprocessing.pool.ThreadPool(procs) as mp:
        return mp.map(func, items)

# File-lock
class FLock(AbstractContextManager):
    '''
        Provides a simple advisory lock-file implementation
            Used to keep two stage processes from writing into the same work directory
    '''
    __slots__ = ('path', 'owner', 'file', '_lock')

    def __init__(self, path: Path, owner: str = ''):
        self.path = path
        self.owner = owner
        self.file = None
        self._lock = RLock()

    def _acquire_once(self, release_on_exit: bool) -> bool:
        try:
            self.file = os.open(self.path, os.O_WRONLY | os.O_CREAT | os.O_EXCL) # fail if it exists
        except FileExistsError: return False
        with os.fdopen(os.dup(self.file), 'w') as f: f.write(f'{os.getpid()} {self.owner}'.strip())
        if release_on_exit: atexit.register(self._quiet_release)
        return True

    @property
    @mlock
    def held(self) -> bool: return self.file is not None

    @mlock
    def acquire(self, *, release_on_exit: bool = True) -> bool:
        '''
            Makes a single attempt at the lock and returns whether it succeeded
                If the lock is held by this instance, instantly returns `True`
            If `release_on_exit` is true, then a release method is registered via `atexit`
        '''
        if self.held: return True
        return self._acquire_once(release_on_exit)
    def __enter__(self) -> typing.Self:
        if not self.acquire():
            exc = DataError(f'Work directory is locked by another process: {self.path}', self.path)
            try: exc.add_note(f'Lock holder: {self.path.read_text()!r}')
            except OSError: pass
            exc.add_note('If no other stage is running, remove the lock file by hand')
            raise exc
        return self

    @mlock
    def release(self):
        '''Releases the lock'''
        if not self.held: raise TypeError('Cannot release a lock that is not held')
        try: os.close(self.file)
        except OSError: pass
        self.file = None
        self.path.unlink(missing_ok=True)
        atexit.unregister(self._quiet_release)
    def __exit__(self, exc_type: type[Exception] | None, exc_value: typing.Any, traceback: types.TracebackType | None):
        self.release()

    @mlock
    def _quiet_release(self):
        if not self.held: return
        try: os.close(self.file)
        except OSError: pass
        self.file = None
        self.path.unlink(missing_ok=True)
