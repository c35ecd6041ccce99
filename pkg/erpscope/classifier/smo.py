#!/bin/python3

'''
    Soft-margin maximum-margin training by sequential minimal optimisation

    The dual, max sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij subject to 0 <= a_i <= C and sum(a_i y_i) = 0,
        is solved by repeatedly moving the maximal violating pair: with g_k = 1 - y_k sum_l a_l y_l K_kl,
        i maximises y_k g_k over the indices that may move up, and j minimises it over those that may
        move down; training stops once the gap between them is below the tolerance
'''

#> Imports
import math
import typing
from dataclasses import dataclass

import numpy as np

from . import logger
from .kernels import KernelSpec
from ..relieff import LabeledDataset
from ..util.errors import ParameterError, ShapeError, ConvergenceError
#</Imports

#> Header >/
__all__ = ('TOLERANCE', 'DualSolution', 'TrainedModel', 'standardize_stats', 'solve_dual', 'train', 'predict', 'predict_many')

TOLERANCE = 1e-3
_TAU = 1e-12

class DualSolution(typing.NamedTuple):
    alphas: np.ndarray
    bias: float
    iterations: int
    violation: float

def solve_dual(gram: np.ndarray, y: np.ndarray, c: float, *, seed: int = 0, tol: float = TOLERANCE,
               max_iter: int | None = None) -> DualSolution:
    '''
        Solves the soft-margin dual for the kernel matrix `gram` and +/-1 labels `y`
            `seed` fixes the scan order that breaks ties between equally violating indices
        Raises `ConvergenceError` if the iteration cap is reached first
    '''
    n = len(y)
    if max_iter is None: max_iter = max(100_000, 100 * n)
    perm = np.random.default_rng(seed).permutation(n)
    yp, kp = y[perm], gram[np.ix_(perm, perm)]
    alpha = np.zeros(n)
    g = np.ones(n)
    diag = np.diag(kp)
    pos = yp > 0
    violation = math.inf
    for it in range(max_iter):
        yg = yp * g
        up = np.where(pos, alpha < c, alpha > 0)
        low = np.where(pos, alpha > 0, alpha < c)
        i = int(np.argmax(np.where(up, yg, -np.inf))) # argmax/argmin take the first in scan order
        j = int(np.argmin(np.where(low, yg, np.inf)))
        violation = yg[i] - yg[j]
        if violation < tol: break
        curv = max(diag[i] + diag[j] - 2 * kp[i, j], _TAU)
        step = min((c if pos[i] else 0.) - yp[i] * alpha[i],
                   yp[j] * alpha[j] - (0. if pos[j] else -c),
                   violation / curv)
        g += step * yp * (kp[j] - kp[i])
        alpha[i] += yp[i] * step
        alpha[j] -= yp[j] * step
        # clamp rounding drift back into the box
        alpha[i] = min(max(alpha[i], 0.), c)
        alpha[j] = min(max(alpha[j], 0.), c)
    else:
        exc = ConvergenceError(f'SMO did not converge within {max_iter} iteration(s)', violation)
        exc.add_note(f'Final KKT violation: {violation:.3g} (tolerance {tol:.3g})')
        raise exc
    yg = yp * g
    free = (alpha > 0) & (alpha < c)
    if free.any(): bias = float(np.mean(yg[free]))
    else:
        up = np.where(pos, alpha < c, alpha > 0)
        low = np.where(pos, alpha > 0, alpha < c)
        bias = (float(np.max(yg[up], initial=-np.inf)) + float(np.min(yg[low], initial=np.inf))) / 2
        if not math.isfinite(bias): bias = 0.
    out = np.empty(n)
    out[perm] = alpha
    return DualSolution(out, bias, it, float(violation))

@dataclass(slots=True, kw_only=True, weakref_slot=True, eq=False)
class TrainedModel:
    '''
        A trained classifier
            Inputs are rows over the `n_features` training columns; only `feature_subset` is used,
            standardized by the training `feature_mean` and `feature_scale`
    '''
    alphas: np.ndarray
    support_labels: np.ndarray # +/-1
    support_samples: np.ndarray # standardized
    bias: float
    kernel: KernelSpec
    regularization_c: float
    feature_subset: tuple[int, ...]
    feature_mean: np.ndarray
    feature_scale: np.ndarray
    n_features: int

    @property
    def support_coefficients(self) -> np.ndarray:
        return self.alphas * self.support_labels
    @property
    def normalization_stats(self) -> np.ndarray:
        '''Per selected feature (mean, scale), as a len(subset) x 2 array'''
        return np.column_stack((self.feature_mean, self.feature_scale))

    def prepare(self, rows: np.ndarray) -> np.ndarray:
        '''Selects and standardizes the model's features from full-width `rows`'''
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if rows.shape[1] != self.n_features:
            raise ShapeError(f'Expected rows of {self.n_features} feature(s), got {rows.shape[1]}')
        return (rows[:, self.feature_subset] - self.feature_mean) / self.feature_scale
    def decision(self, rows: np.ndarray) -> np.ndarray:
        x = self.prepare(rows)
        if not len(self.alphas): return np.full(len(x), self.bias)
        return self.kernel.gram(x, self.support_samples) @ self.support_coefficients + self.bias
    def dual_objective(self) -> float:
        '''Value of the dual objective at the trained coefficients'''
        coef = self.support_coefficients
        return float(self.alphas.sum() - .5 * coef @ self.kernel.gram(self.support_samples, self.support_samples) @ coef)

    def serialize_to_dict(self) -> dict:
        return {
            'alphas': self.alphas.tolist(),
            'support_labels': self.support_labels.astype(int).tolist(),
            'support_samples': self.support_samples.tolist(),
            'bias': self.bias,
            'kernel': self.kernel.serialize_to_dict(),
            'regularization_c': self.regularization_c,
            'feature_subset': list(self.feature_subset),
            'feature_mean': self.feature_mean.tolist(),
            'feature_scale': self.feature_scale.tolist(),
            'n_features': self.n_features,
        }
    @classmethod
    def deserialize_from_dict(cls, d: typing.Mapping) -> typing.Self:
        nsub = len(d['feature_subset'])
        return cls(alphas=np.asarray(d['alphas'], dtype=float),
                   support_labels=np.asarray(d['support_labels'], dtype=float),
                   support_samples=np.asarray(d['support_samples'], dtype=float).reshape(-1, nsub),
                   bias=float(d['bias']), kernel=KernelSpec.deserialize_from_dict(d['kernel']),
                   regularization_c=float(d['regularization_c']), feature_subset=tuple(map(int, d['feature_subset'])),
                   feature_mean=np.asarray(d['feature_mean'], dtype=float), feature_scale=np.asarray(d['feature_scale'], dtype=float),
                   n_features=int(d['n_features']))

def standardize_stats(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    '''Column means and (population) standard deviations, with constant columns given a scale of 1'''
    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    return mean, np.where(scale > 0, scale, 1.)

def train(ds: LabeledDataset, subset: typing.Sequence[int] | None = None, kernel: KernelSpec = KernelSpec(),
          c: float = 1., seed: int = 0, *, tol: float = TOLERANCE, max_iter: int | None = None) -> TrainedModel:
    '''
        Trains on the `subset` columns of `ds` (default: every column)
            Class 1 (dyslexic) is the positive class
    '''
    if subset is None: subset = range(ds.n_features)
    subset = tuple(int(s) for s in subset)
    if not subset: raise ParameterError('The feature subset is empty')
    if not all(0 <= s < ds.n_features for s in subset):
        raise ParameterError(f'Feature subset indices must lie within [0, {ds.n_features})')
    if not (c > 0): raise ParameterError(f'C must be positive, got {c}')
    if ds.has_missing: raise ParameterError('Training data holds missing values; impute them first')
    if min(ds.class_counts()) < 1: raise ParameterError('Both classes must be present to train')
    raw = ds.matrix[:, subset]
    mean, scale = standardize_stats(raw)
    x = (raw - mean) / scale
    y = np.where(ds.labels == 1, 1., -1.)
    kernel = kernel.resolved(len(subset))
    sol = solve_dual(kernel.gram(x, x), y, c, seed=seed, tol=tol, max_iter=max_iter)
    sv = sol.alphas > 0
    logger.verbose(f'Trained on {ds.n_samples} sample(s) x {len(subset)} feature(s): {int(sv.sum())} support vector(s), '
                   f'{sol.iterations} iteration(s), final violation {sol.violation:.3g}')
    return TrainedModel(alphas=sol.alphas[sv], support_labels=y[sv], support_samples=x[sv], bias=sol.bias,
                        kernel=kernel, regularization_c=float(c), feature_subset=subset,
                        feature_mean=mean, feature_scale=scale, n_features=ds.n_features)

def predict_many(model: TrainedModel, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    '''Labels (1 when the margin is positive, else 0) and margins of every row'''
    margins = model.decision(rows)
    return (margins > 0).astype(int), margins
def predict(model: TrainedModel, sample: np.ndarray) -> tuple[int, float]:
    '''Label and margin of a single full-width `sample`'''
    sample = np.asarray(sample, dtype=float)
    if sample.ndim != 1: raise ShapeError(f'Expected a single sample, got an array of shape {sample.shape}')
    labels, margins = predict_many(model, sample[None, :])
    return int(labels[0]), float(margins[0])
