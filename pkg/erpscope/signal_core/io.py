#!/bin/python3

'''
    Reading and writing recordings, epochs, and ERP averages

    Continuous recordings: `<subject>.csv` holds a `rate_hz,<value>` line, a `channels,<labels...>` line,
        then one comma-separated row of microvolt values per sample; `<subject>.events.csv` holds
        `sample_index,condition,correct` rows
    Epochs and ERP averages: one JSON metadata line, then a channels x samples comma-separated matrix
    The subject index `subjects.csv` holds `subject_id,class_label` rows
'''

#> Imports
import io
import json
import typing
from pathlib import Path

import numpy as np
import pandas as pd

from . import logger
from .types import SamplingMeta, Event, ContinuousRecording, Epoch, ErpAverage
from ..util.errors import DataError, OutputError
#</Imports

#> Header >/
__all__ = ('RAW_FORMAT', 'EXACT_FORMAT', 'events_path',
           'read_recording', 'write_recording',
           'read_epoch', 'write_epoch', 'read_epoch_dir',
           'read_erp', 'write_erp', 'read_erp_dir',
           'read_subjects', 'write_subjects')

RAW_FORMAT = '%.9g'
EXACT_FORMAT = '%.17g' # round-trips doubles exactly

def events_path(path: Path) -> Path:
    '''Returns the companion events file of the recording at `path`'''
    return path.with_name(f'{path.name.removesuffix(".csv")}.events.csv')

def _matrix_text(m: np.ndarray, fmt: str) -> str:
    buf = io.StringIO()
    np.savetxt(buf, m, fmt=fmt, delimiter=',')
    return buf.getvalue()
def _write(path: Path, text: str):
    try: path.write_text(text)
    except OSError as e:
        exc = OutputError(f'Could not write {path}: {e}')
        exc.add_note(f'Path: {path}')
        raise exc from e
def _read_lines(path: Path, n: int) -> tuple[list[str], str]:
    try: text = path.read_text()
    except OSError as e:
        raise DataError(f'Could not read {path}: {e}', path) from e
    parts = text.split('\n', n)
    if len(parts) <= n:
        raise DataError(f'{path} is truncated (expected {n} header line(s) and data)', path)
    return parts[:n], parts[n]
def _parse_matrix(path: Path, body: str, rows: int | None = None) -> np.ndarray:
    try: m = np.loadtxt(io.StringIO(body), delimiter=',', ndmin=2)
    except ValueError as e:
        raise DataError(f'Malformed numeric data in {path}: {e}', path) from e
    if (rows is not None) and (m.shape[0] != rows):
        raise DataError(f'{path} holds {m.shape[0]} row(s), expected {rows}', path)
    return m

# Continuous recordings
def write_recording(rec: ContinuousRecording, path: Path):
    '''Writes `rec` to `path`, and its events to the companion events file'''
    header = f'rate_hz,{rec.rate_hz!r}\nchannels,{",".join(rec.channels)}\n'
    _write(path, header + _matrix_text(rec.samples.T, RAW_FORMAT))
    events = pd.DataFrame(rec.events, columns=('sample_index', 'condition', 'correct')).astype({'correct': int})
    _write(events_path(path), events.to_csv(index=False, lineterminator='\n'))
    logger.verbose(f'Wrote {len(rec.channels)}-channel recording of {rec.n_samples} sample(s) to {path}')
def read_recording(path: Path) -> ContinuousRecording:
    '''Reads a recording from `path`, and its events from the companion events file if it exists'''
    (rate_line, chan_line), body = _read_lines(path, 2)
    rkey, _, rate = rate_line.partition(',')
    ckey, _, chans = chan_line.partition(',')
    if (rkey != 'rate_hz') or (ckey != 'channels'):
        raise DataError(f'{path} does not start with "rate_hz" and "channels" lines', path)
    channels = tuple(chans.split(','))
    samples = _parse_matrix(path, body).T
    if samples.shape[0] != len(channels):
        raise DataError(f'{path} has {samples.shape[0]} column(s) for {len(channels)} channel(s)', path)
    evp = events_path(path)
    events = ()
    if evp.exists():
        try: df = pd.read_csv(evp, dtype={'sample_index': int, 'condition': str, 'correct': int}, keep_default_na=False)
        except (ValueError, KeyError) as e:
            raise DataError(f'Malformed events file {evp}: {e}', evp) from e
        events = tuple(Event(int(r.sample_index), r.condition, bool(r.correct)) for r in df.itertuples(index=False))
    else: logger.warning(f'No events file found for {path} (looked for {evp})')
    try: return ContinuousRecording(channels=channels, samples=samples, rate_hz=float(rate), events=events)
    except ValueError as e:
        e.add_note(f'While reading {path}')
        raise

# Epochs
def write_epoch(epoch: Epoch, path: Path):
    header = {'kind': 'epoch', 'channels': list(epoch.channels), 'meta': epoch.meta.serialize_to_dict(),
              'condition': epoch.condition, 'correct': epoch.correct}
    _write(path, json.dumps(header, sort_keys=True) + '\n' + _matrix_text(epoch.channel_values, EXACT_FORMAT))
def read_epoch(path: Path) -> Epoch:
    header, body = _read_header(path, 'epoch')
    return Epoch(channels=header['channels'], channel_values=_parse_matrix(path, body, len(header['channels'])),
                 meta=SamplingMeta.deserialize_from_dict(header['meta']),
                 condition=header.get('condition', ''), correct=bool(header.get('correct', True)))
def read_epoch_dir(path: Path) -> list[Epoch]:
    '''Reads every `*.csv` epoch file in `path`, in file-name order'''
    if not path.is_dir(): raise DataError(f'Epoch directory {path} does not exist', path)
    return [read_epoch(p) for p in sorted(path.glob('*.csv'))]

# ERP averages
def write_erp(erp: ErpAverage, path: Path):
    header = {'kind': 'erp', 'channels': list(erp.channels), 'meta': erp.meta.serialize_to_dict(),
              'n_trials': erp.n_trials, 'subject_id': erp.subject_id, 'class_label': erp.class_label}
    _write(path, json.dumps(header, sort_keys=True) + '\n' + _matrix_text(erp.channel_values, EXACT_FORMAT))
def read_erp(path: Path) -> ErpAverage:
    header, body = _read_header(path, 'erp')
    return ErpAverage(channels=header['channels'], channel_values=_parse_matrix(path, body, len(header['channels'])),
                      meta=SamplingMeta.deserialize_from_dict(header['meta']), n_trials=int(header['n_trials']),
                      subject_id=header.get('subject_id', ''), class_label=header.get('class_label'))
def read_erp_dir(path: Path) -> list[ErpAverage]:
    '''Reads every `*.erp.csv` file in `path`, in file-name order'''
    if not path.is_dir(): raise DataError(f'ERP directory {path} does not exist', path)
    return [read_erp(p) for p in sorted(path.glob('*.erp.csv'))]

def _read_header(path: Path, kind: str) -> tuple[dict, str]:
    (line,), body = _read_lines(path, 1)
    try: header = json.loads(line)
    except json.JSONDecodeError as e:
        raise DataError(f'Malformed metadata header in {path}: {e}', path) from e
    if header.get('kind', kind) != kind:
        raise DataError(f'{path} holds a {header["kind"]!r}, expected {kind!r}', path)
    return header, body

# Subjects
def write_subjects(subjects: typing.Iterable[tuple[str, str | None]], path: Path):
    df = pd.DataFrame(list(subjects), columns=('subject_id', 'class_label'))
    _write(path, df.to_csv(index=False, lineterminator='\n'))
def read_subjects(path: Path) -> list[tuple[str, str | None]]:
    if not path.exists(): raise DataError(f'Subject index {path} does not exist', path)
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    if tuple(df.columns) != ('subject_id', 'class_label'):
        raise DataError(f'{path} must have the columns subject_id,class_label', path)
    return [(r.subject_id, r.class_label or None) for r in df.itertuples(index=False)]
