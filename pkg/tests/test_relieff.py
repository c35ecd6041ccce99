#!/bin/python3

#> Imports
from pathlib import Path

import numpy as np
import pytest

from erpscope import relieff
from erpscope.relieff import LabeledDataset, WeightVector
from erpscope.util.errors import ParameterError, ShapeError, DataError
#</Imports

#> Header >/
def brute_relieff(m: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    '''Loop-by-loop ReliefF: range-scaled Manhattan neighbours, ties by sample index'''
    n, f = m.shape
    lo, hi = m.min(axis=0), m.max(axis=0)
    x = [[((m[i, j] - lo[j]) / (hi[j] - lo[j]) if hi[j] > lo[j] else 0.) for j in range(f)] for i in range(n)]
    w = [0.] * f
    for t in range(n):
        ranked = [s for _,s in sorted((sum(abs(x[t][j] - x[s][j]) for j in range(f)), s) for s in range(n))]
        hits = [s for s in ranked if (y[s] == y[t]) and (s != t)][:k]
        misses = [s for s in ranked if y[s] != y[t]][:k]
        for j in range(f):
            w[j] += (sum(abs(x[s][j] - x[t][j]) for s in misses) - sum(abs(x[s][j] - x[t][j]) for s in hits)) / k
    return np.array(w) / n

def blobs(rng: np.random.Generator, per_class: int, features: int) -> LabeledDataset:
    return LabeledDataset(matrix=rng.standard_normal((2 * per_class, features)),
                          labels=np.repeat([0, 1], per_class))

@pytest.mark.parametrize(('seed', 'per_class', 'features', 'k'), (
    (0, 4, 3, 1), (1, 5, 4, 2), (2, 7, 6, 3), (3, 8, 5, 5), (4, 6, 2, 1),
))
def test_matches_brute_force(seed: int, per_class: int, features: int, k: int):
    rng = np.random.default_rng(seed)
    ds = blobs(rng, per_class, features)
    ds.labels = rng.permutation(ds.labels)
    w = relieff.relieff_weights(ds, k)
    assert w.k_neighbors == k
    assert np.allclose(w.weights, brute_relieff(ds.matrix, ds.labels, k), rtol=0, atol=1e-12)
    assert np.all(np.abs(w.weights) <= 1.)

def test_matches_brute_force_on_random_shapes():
    rng = np.random.default_rng(77)
    for _ in range(50):
        k = int(rng.integers(1, 4))
        n0 = int(rng.integers(k + 1, 10 - k))
        n1 = int(rng.integers(k + 1, 11 - n0))
        labels = rng.permutation(np.repeat([0, 1], (n0, n1)))
        m = rng.standard_normal((n0 + n1, int(rng.integers(1, 6))))
        w = relieff.relieff_weights(LabeledDataset(matrix=m, labels=labels), k)
        assert np.allclose(w.weights, brute_relieff(m, labels, k), rtol=0, atol=1e-12)

def test_affine_column_change_keeps_weights(rng: np.random.Generator):
    ds = blobs(rng, 8, 5)
    before = relieff.relieff_weights(ds, 3).weights
    for col in range(5):
        a, b = rng.uniform(.1, 10.), rng.uniform(-100., 100.)
        m = ds.matrix.copy()
        m[:, col] = a * m[:, col] + b
        after = relieff.relieff_weights(LabeledDataset(matrix=m, labels=ds.labels), 3).weights
        assert np.allclose(after, before, rtol=0, atol=1e-10)

def test_sample_order_keeps_weights(rng: np.random.Generator):
    ds = blobs(rng, 9, 4)
    before = relieff.relieff_weights(ds, 3).weights
    for _ in range(5):
        order = rng.permutation(ds.n_samples)
        after = relieff.relieff_weights(ds.subset(rows=order), 3).weights
        assert np.allclose(after, before, rtol=0, atol=1e-12)

def test_duplicate_and_constant_columns(rng: np.random.Generator):
    base = rng.standard_normal((16, 3))
    m = np.column_stack((base, base[:, 1], np.full(16, 7.)))
    w = relieff.relieff_weights(LabeledDataset(matrix=m, labels=np.repeat([0, 1], 8)), 3).weights
    assert w[1] == pytest.approx(w[3], abs=1e-15)
    assert w[4] == 0.

def test_planted_feature_ranks_first(rng: np.random.Generator):
    labels = np.repeat([0, 1], 10)
    m = rng.standard_normal((20, 6))
    m[:, 4] = labels + .1 * rng.standard_normal(20)
    w = relieff.relieff_weights(LabeledDataset(matrix=m, labels=labels, layout=tuple(('Cz', f'F{i}') for i in range(6))), 3)
    assert relieff.select_top_k(w, 1) == [4]
    assert w.layout[4] == ('Cz', 'F4')

def test_planted_feature_rate():
    labels = np.repeat([0, 1], 10)
    hits = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((20, 5))
        m[:, 2] = labels + .2 * rng.standard_normal(20)
        hits += relieff.select_top_k(relieff.relieff_weights(LabeledDataset(matrix=m, labels=labels), 3), 1) == [2]
    assert hits >= 95

def test_weight_errors(rng: np.random.Generator):
    ds = blobs(rng, 5, 3)
    for bad in (5, 6, 0, 1.5):
        with pytest.raises(ParameterError):
            relieff.relieff_weights(ds, bad)
    holes = ds.matrix.copy()
    holes[0, 0] = np.nan
    with pytest.raises(ParameterError):
        relieff.relieff_weights(LabeledDataset(matrix=holes, labels=ds.labels, allow_missing=True), 2)

def test_dataset_validation():
    with pytest.raises(ParameterError):
        LabeledDataset(matrix=np.zeros((3, 2)), labels=[0, 0, 0])
    with pytest.raises(ParameterError):
        LabeledDataset(matrix=np.zeros((2, 2)), labels=[0, 2])
    with pytest.raises(ShapeError):
        LabeledDataset(matrix=np.zeros((3, 2)), labels=[0, 1])
    with pytest.raises(ParameterError):
        LabeledDataset(matrix=[[np.nan], [1.]], labels=[0, 1])
    ds = LabeledDataset(matrix=[[1., 2.], [3., 4.], [5., 6.]], labels=[0, 1, 1], layout=(('a', 'x'), ('b', 'y')))
    sub = ds.subset(rows=[2, 0], cols=[1])
    assert sub.matrix.tolist() == [[6.], [2.]]
    assert sub.layout == (('b', 'y'),)
    assert ds.class_counts() == (1, 2)

def test_select_top_k():
    w = np.array([.5, .9, .5, .9, -.1])
    assert relieff.select_top_k(w, 3) == [1, 3, 0]
    assert relieff.select_top_k(WeightVector(weights=w), 5) == [1, 3, 0, 2, 4]
    for bad in (0, 6, 2.5):
        with pytest.raises(ParameterError):
            relieff.select_top_k(w, bad)

def test_weight_file(tmp_path: Path, rng: np.random.Generator):
    layout = (('Fp1', 'E'), ('NA', 'L100-200'), ('P7', 'ZCR'))
    w = WeightVector(weights=np.array([-.25, 1 / 3, .1]), k_neighbors=2, layout=layout)
    path = tmp_path / 'weights.csv'
    relieff.write_weights(w, path)
    lines = path.read_text().splitlines()
    assert lines[0] == 'feature_index,electrode,feature_name,weight'
    assert [l.split(',')[0] for l in lines[1:]] == ['1', '2', '0']
    back = relieff.read_weights(path)
    assert back.weights.tolist() == w.weights.tolist()
    assert back.layout == layout and back.k_neighbors is None
    path.write_text('feature_index,electrode,feature_name,weight\n0,Fz,E,1\n2,Fz,L,0\n')
    with pytest.raises(DataError):
        relieff.read_weights(path)
    path.write_text('index,weight\n0,1\n')
    with pytest.raises(DataError):
        relieff.read_weights(path)
    with pytest.raises(DataError):
        relieff.read_weights(tmp_path / 'missing.csv')

def test_weight_profile_is_deterministic(tmp_path: Path, rng: np.random.Generator):
    w = WeightVector(weights=rng.standard_normal(40), k_neighbors=3)
    a, b = tmp_path / 'a.svg', tmp_path / 'b.svg'
    relieff.render_weight_profile(w, a, highlight=5)
    relieff.render_weight_profile(w, b, highlight=5)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().lstrip().startswith('<?xml')
