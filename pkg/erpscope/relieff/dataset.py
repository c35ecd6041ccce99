#!/bin/python3

'''Provides the `LabeledDataset` class'''

#> Imports
import typing
from dataclasses import dataclass

import numpy as np

from ..util.errors import ParameterError, ShapeError
#</Imports

#> Header >/
__all__ = ('LabeledDataset',)

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class LabeledDataset:
    '''
        A subjects x features matrix with binary (0/1) class labels
            Both classes must be present; missing values (NaN) are refused unless `allow_missing`
    '''
    matrix: np.ndarray
    labels: np.ndarray
    layout: tuple[tuple[str, str], ...] | None = None
    allow_missing: bool = False

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.matrix.ndim != 2:
            raise ShapeError(f'Dataset matrix must be 2-dimensional, got {self.matrix.ndim} dimension(s)')
        if self.labels.shape != (self.matrix.shape[0],):
            raise ShapeError(f'{self.labels.size} label(s) given for {self.matrix.shape[0]} sample(s)')
        if (self.layout is not None) and (len(self.layout) != self.matrix.shape[1]):
            raise ShapeError(f'Layout names {len(self.layout)} column(s), matrix has {self.matrix.shape[1]}')
        if not np.isin(self.labels, (0, 1)).all():
            raise ParameterError(f'Labels must be 0 or 1, got {sorted(set(self.labels.tolist()) - {0, 1})}')
        if len(np.unique(self.labels)) < 2:
            raise ParameterError('Both classes must be present in a labeled dataset')
        if (not self.allow_missing) and np.isnan(self.matrix).any():
            exc = ParameterError(f'Dataset holds {int(np.isnan(self.matrix).sum())} missing value(s)')
            exc.add_note('Impute them first, or construct with allow_missing=True')
            raise exc

    @classmethod
    def from_feature_matrix(cls, fm: 'FeatureMatrix', *, allow_missing: bool = False) -> typing.Self:
        return cls(matrix=fm.values, labels=fm.labels(), layout=fm.layout, allow_missing=allow_missing)

    @property
    def n_samples(self) -> int:
        return self.matrix.shape[0]
    @property
    def n_features(self) -> int:
        return self.matrix.shape[1]
    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.matrix).any())
    @property
    def feature_ranges(self) -> np.ndarray:
        '''Per-feature (min, max), as an n_features x 2 array'''
        return np.column_stack((np.nanmin(self.matrix, axis=0), np.nanmax(self.matrix, axis=0)))
    def class_counts(self) -> tuple[int, int]:
        return int(np.count_nonzero(self.labels == 0)), int(np.count_nonzero(self.labels == 1))

    def subset(self, rows: typing.Sequence[int] | np.ndarray | None = None, cols: typing.Sequence[int] | np.ndarray | None = None) -> typing.Self:
        '''Returns a dataset restricted to `rows` and/or `cols` (in the given order)'''
        m, labels, layout = self.matrix, self.labels, self.layout
        if rows is not None:
            rows = np.asarray(rows, dtype=int)
            m, labels = m[rows], labels[rows]
        if cols is not None:
            cols = np.asarray(cols, dtype=int)
            m = m[:, cols]
            if layout is not None: layout = tuple(layout[c] for c in cols)
        return type(self)(matrix=m, labels=labels, layout=layout, allow_missing=self.allow_missing)
