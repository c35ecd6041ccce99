#!/bin/python3

'''
    Repeated cross-validation of the classifier, reported as row-percentage confusion matrices

    Every training fold is imputed with its own column means and, when a `SelectionSpec` is given,
        ReliefF selection is refit on the training rows only; `SelectionSpec.leaky` selects once on
        every row instead, which reproduces the optimistic protocol
'''

#> Imports
import typing
from pathlib import Path
from functools import partial
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from sklearn.model_selection import StratifiedKFold, LeaveOneOut

from . import logger
from .kernels import KernelSpec
from .smo import train, predict_many
from .. import relieff
from ..relieff import LabeledDataset
from ..signal_core import CLASS_LABELS
from ..feature_bank import impute_column_means
from ..util.parallel import thread_map
from ..util.errors import ParameterError, OutputError
#</Imports

#> Header >/
__all__ = ('CV_KINDS', 'CVScheme', 'SelectionSpec', 'ConfusionReport', 'cross_validate', 'write_report')

CV_KINDS = ('stratified-k-fold', 'leave-one-subject-out')

_CORNER = 'true \\ predicted'

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class CVScheme:
    kind: typing.Literal[*CV_KINDS] = 'stratified-k-fold'
    folds: int = 5

    def __post_init__(self):
        if self.kind not in CV_KINDS:
            raise ParameterError(f'Unknown validation scheme {self.kind!r}, expected one of {", ".join(CV_KINDS)}')
        if (self.kind == 'stratified-k-fold') and ((int(self.folds) != self.folds) or (self.folds < 2)):
            raise ParameterError(f'Stratified k-fold needs an integer fold count of at least 2, got {self.folds}')

    @property
    def label(self) -> str:
        if self.kind == 'leave-one-subject-out': return self.kind
        return f'stratified-{self.folds}-fold'

    def splits(self, labels: np.ndarray, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
        '''(train rows, test rows) per fold, shuffled by `seed`'''
        if self.kind == 'leave-one-subject-out':
            return list(LeaveOneOut().split(labels))
        counts = np.bincount(labels, minlength=2)
        if counts.min() < self.folds:
            exc = ParameterError(f'{self.folds} folds exceed the smallest class size ({int(counts.min())})')
            exc.add_note(f'Class sizes: {int(counts[0])} (class 0), {int(counts[1])} (class 1)')
            raise exc
        skf = StratifiedKFold(n_splits=int(self.folds), shuffle=True, random_state=seed)
        return list(skf.split(np.zeros(len(labels)), labels))

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class SelectionSpec:
    '''ReliefF with `k_neighbors` neighbours, keeping the `n_features` best-weighted columns'''
    k_neighbors: int = relieff.DEFAULT_K
    n_features: int = 60
    leaky: bool = False

    def __post_init__(self):
        if self.k_neighbors < 1: raise ParameterError(f'k_neighbors must be positive, got {self.k_neighbors}')
        if self.n_features < 1: raise ParameterError(f'n_features must be positive, got {self.n_features}')

    def select(self, ds: LabeledDataset) -> list[int]:
        return relieff.select_top_k(relieff.relieff_weights(ds, self.k_neighbors), min(self.n_features, ds.n_features))

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class ConfusionReport:
    '''
        Row-percentage confusion matrices over repeats
            `mean` and `sd` are 2x2, indexed [true, predicted] in `CLASS_LABELS` order;
            `per_repeat` is repeats x 2 x 2; `selections` lists the columns used per (repeat, fold)
    '''
    mean: np.ndarray
    sd: np.ndarray
    per_repeat: np.ndarray
    n_repeats: int
    scheme: str
    n_features: int | None = None
    selections: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def from_repeats(cls, per_repeat: np.ndarray, **kwargs) -> typing.Self:
        per_repeat = np.asarray(per_repeat, dtype=float)
        return cls(mean=per_repeat.mean(axis=0), sd=per_repeat.std(axis=0), per_repeat=per_repeat,
                   n_repeats=len(per_repeat), **kwargs)

    def diagonal_mean(self) -> float:
        '''Mean of the two correct-classification cells'''
        return float(np.diag(self.mean).mean())
    def cell(self, true: int, predicted: int) -> str:
        return f'{self.mean[true, predicted]:.1f}%±{self.sd[true, predicted]:.1f}%'
    def render(self, title: str | None = None) -> str:
        if title is None:
            title = f'Confusion matrix ({self.scheme}, {self.n_repeats} repeat(s)'
            title += ')' if self.n_features is None else f', {self.n_features} feature(s))'
        width = max(14, *(len(self.cell(t, p)) + 2 for t in range(2) for p in range(2)))
        lines = [title, f'{_CORNER:<18}' + ''.join(f'{l:<{width}}' for l in CLASS_LABELS)]
        for t,l in enumerate(CLASS_LABELS):
            lines.append(f'{l:<18}' + ''.join(f'{self.cell(t, p):<{width}}' for p in range(2)))
        return '\n'.join(line.rstrip() for line in lines)

    def serialize_to_dict(self) -> dict:
        return {'mean': self.mean.tolist(), 'sd': self.sd.tolist(), 'per_repeat': self.per_repeat.tolist(),
                'n_repeats': self.n_repeats, 'scheme': self.scheme, 'n_features': self.n_features,
                'selections': [list(s) for s in self.selections]}
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        return cls(mean=np.asarray(d['mean'], dtype=float), sd=np.asarray(d['sd'], dtype=float),
                   per_repeat=np.asarray(d['per_repeat'], dtype=float).reshape(-1, 2, 2),
                   n_repeats=int(d['n_repeats']), scheme=str(d['scheme']), n_features=d.get('n_features', None),
                   selections=tuple(tuple(map(int, s)) for s in d.get('selections', ())))

class _RepeatResult(typing.NamedTuple):
    percent: np.ndarray
    selections: list[tuple[int, ...]]

def _run_repeat(rep: int, ds: LabeledDataset, subset: tuple[int, ...] | None, kernel: KernelSpec, c: float,
                scheme: CVScheme, seed: int, selection: SelectionSpec | None,
                fixed: tuple[int, ...] | None) -> _RepeatResult:
    rng = np.random.default_rng([seed, rep])
    split_seed, train_seed = (int(s) for s in rng.integers(2**31, size=2))
    counts = np.zeros((2, 2))
    chosen = []
    for fold,(tr,te) in enumerate(scheme.splits(ds.labels, split_seed)):
        imputed, _ = impute_column_means(ds.matrix, tr)
        train_ds = LabeledDataset(matrix=imputed[tr], labels=ds.labels[tr], layout=ds.layout)
        if fixed is not None: cols = fixed
        elif selection is not None: cols = tuple(selection.select(train_ds))
        else: cols = subset
        model = train(train_ds, cols, kernel, c, train_seed)
        predicted, _ = predict_many(model, imputed[te])
        np.add.at(counts, (ds.labels[te], predicted), 1)
        chosen.append(model.feature_subset)
        logger.trace(f'Repeat {rep} fold {fold}: {len(tr)} train / {len(te)} test row(s), {len(model.feature_subset)} feature(s)')
    rows = counts.sum(axis=1, keepdims=True)
    return _RepeatResult(100 * np.divide(counts, rows, out=np.zeros_like(counts), where=rows > 0), chosen)

def cross_validate(ds: LabeledDataset, subset: typing.Sequence[int] | None = None, kernel: KernelSpec = KernelSpec(),
                   c: float = 1., scheme: CVScheme = CVScheme(), repeats: int = 20, seed: int = 0, *,
                   selection: SelectionSpec | None = None, max_threads: int = 8) -> ConfusionReport:
    '''
        Cross-validates `repeats` times, reshuffling the folds of each repeat from `seed`
            With a `selection`, `subset` is ignored and columns are chosen per training fold
            (or once on all rows, if the selection is leaky); otherwise `subset` (default: all) is used
        Repeats may run concurrently; results are reduced in repeat order, so the report is reproducible
    '''
    if (int(repeats) != repeats) or (repeats < 1): raise ParameterError(f'repeats must be a positive integer, got {repeats}')
    if not (c > 0): raise ParameterError(f'C must be positive, got {c}')
    if subset is not None:
        subset = tuple(int(s) for s in subset)
        if not subset: raise ParameterError('The feature subset is empty')
    fixed = None
    if (selection is not None) and selection.leaky:
        logger.warning('Leaky selection: features are chosen on every row, including test rows')
        imputed, _ = impute_column_means(ds.matrix)
        fixed = tuple(selection.select(LabeledDataset(matrix=imputed, labels=ds.labels, layout=ds.layout)))
    results = thread_map(partial(_run_repeat, ds=ds, subset=subset, kernel=kernel, c=c, scheme=scheme, seed=seed,
                                 selection=selection, fixed=fixed), range(int(repeats)), max_threads)
    n_features = (min(selection.n_features, ds.n_features) if selection is not None
                  else (ds.n_features if subset is None else len(subset)))
    report = ConfusionReport.from_repeats(np.stack([r.percent for r in results]), scheme=scheme.label,
                                          n_features=n_features,
                                          selections=tuple(s for r in results for s in r.selections))
    logger.terse(f'{scheme.label} x{report.n_repeats}: mean diagonal {report.diagonal_mean():.1f}%')
    return report

def write_report(report: ConfusionReport, txt: Path, csv: Path, *, title: str | None = None):
    '''Writes the rendered table to `txt`, and `repeat,true,predicted,percent` rows to `csv`'''
    rows = [(r, CLASS_LABELS[t], CLASS_LABELS[p], report.per_repeat[r, t, p])
            for r in range(report.n_repeats) for t in range(2) for p in range(2)]
    try:
        txt.write_text(report.render(title) + '\n')
        pd.DataFrame(rows, columns=('repeat', 'true', 'predicted', 'percent')) \
          .to_csv(csv, index=False, float_format='%.17g', lineterminator='\n')
    except OSError as e:
        raise OutputError(f'Could not write confusion report: {e}') from e
