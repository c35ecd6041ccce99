#!/bin/python3

#> Imports
import json
from pathlib import Path

import numpy as np
import pytest
from sklearn.svm import SVC

from erpscope import classifier
from erpscope.classifier import KernelSpec, CVScheme, SelectionSpec, ConfusionReport
from erpscope.classifier.smo import TrainedModel, standardize_stats
from erpscope.relieff import LabeledDataset
from erpscope.util.errors import ParameterError, ShapeError, ConvergenceError
#</Imports

#> Header >/
def blobs(rng: np.random.Generator, per_class: int, features: int, shift: float) -> LabeledDataset:
    labels = np.repeat([0, 1], per_class)
    m = rng.standard_normal((2 * per_class, features))
    m[labels == 1] += shift
    return LabeledDataset(matrix=m, labels=labels)

# Training
def test_two_sample_midpoint():
    ds = LabeledDataset(matrix=[[-1.], [1.]], labels=[0, 1])
    model = classifier.train(ds, c=10.)
    assert model.alphas.tolist() == [.5, .5]
    assert classifier.predict(model, np.array([0.]))[1] == pytest.approx(0., abs=1e-12)
    assert classifier.predict(model, np.array([1.])) == (1, pytest.approx(1.))
    assert classifier.predict(model, np.array([-1.])) == (0, pytest.approx(-1.))

@pytest.mark.parametrize('kernel', (KernelSpec(), KernelSpec(kind='gaussian')))
def test_separable_blobs(kernel: KernelSpec, rng: np.random.Generator):
    ds = blobs(rng, 15, 3, 6.)
    model = classifier.train(ds, kernel=kernel, c=10.)
    labels, margins = classifier.predict_many(model, ds.matrix)
    assert labels.tolist() == ds.labels.tolist()
    assert np.all(np.abs(margins) >= 1. - 1e-2)

@pytest.mark.parametrize(('kind', 'c'), (('linear', .5), ('linear', 5.), ('gaussian', 1.)))
def test_dual_objective_matches_libsvm(kind: str, c: float, rng: np.random.Generator):
    ds = blobs(rng, 6, 3, 1.)
    model = classifier.train(ds, kernel=KernelSpec(kind=kind), c=c, tol=1e-9)
    mean, scale = standardize_stats(ds.matrix)
    x = (ds.matrix - mean) / scale
    ref = SVC(kernel='linear' if kind == 'linear' else 'rbf', C=c, gamma=1. / 3, tol=1e-12).fit(x, ds.labels)
    coef = ref.dual_coef_[0]
    gram = model.kernel.gram(ref.support_vectors_, ref.support_vectors_)
    ref_objective = np.abs(coef).sum() - .5 * coef @ gram @ coef
    assert model.dual_objective() == pytest.approx(ref_objective, rel=1e-6)
    assert np.all((model.alphas > 0) & (model.alphas <= c + 1e-12))
    assert abs(np.dot(model.alphas, model.support_labels)) < 1e-9

@pytest.mark.parametrize('factor', (1e-3, 7.5, 1e4))
def test_column_rescaling_keeps_predictions(factor: float, rng: np.random.Generator):
    ds = blobs(rng, 12, 4, 1.5)
    test_rows = rng.standard_normal((30, 4)) + .75
    base_labels, base_margins = classifier.predict_many(classifier.train(ds, c=2.), test_rows)
    m, rows = ds.matrix.copy(), test_rows.copy()
    m[:, 2] *= factor
    rows[:, 2] *= factor
    labels, _ = classifier.predict_many(classifier.train(LabeledDataset(matrix=m, labels=ds.labels), c=2.), rows)
    clear = np.abs(base_margins) > 1e-6
    assert np.array_equal(labels[clear], base_labels[clear])

def test_training_error_does_not_grow_with_c(rng: np.random.Generator):
    labels = np.repeat([0, 1], 15)
    m = rng.standard_normal((30, 3))
    m[:, 0] = np.where(labels == 1, 1., -1.) * rng.uniform(.5, 3., 30) # separable on the first column
    ds = LabeledDataset(matrix=m, labels=labels)
    errors = []
    for c in (.01, .1, 1., 10., 100.):
        predicted, _ = classifier.predict_many(classifier.train(ds, c=c, tol=1e-6), ds.matrix)
        errors.append(int(np.count_nonzero(predicted != labels)))
    assert errors == sorted(errors, reverse=True)
    assert errors[-1] == 0

def test_subset_and_serialization(rng: np.random.Generator):
    ds = blobs(rng, 10, 6, 2.)
    model = classifier.train(ds, [4, 1], seed=3)
    assert model.feature_subset == (4, 1)
    assert model.normalization_stats.shape == (2, 2)
    back = TrainedModel.deserialize_from_dict(json.loads(json.dumps(model.serialize_to_dict())))
    assert np.array_equal(classifier.predict_many(back, ds.matrix)[1], classifier.predict_many(model, ds.matrix)[1])
    with pytest.raises(ShapeError):
        classifier.predict(model, ds.matrix[0, :2])
    with pytest.raises(ShapeError):
        classifier.predict(model, ds.matrix[:2])

def test_training_is_seeded(rng: np.random.Generator):
    ds = blobs(rng, 10, 4, .5)
    a, b = classifier.train(ds, seed=11), classifier.train(ds, seed=11)
    assert np.array_equal(a.alphas, b.alphas) and (a.bias == b.bias)

def test_training_errors(rng: np.random.Generator):
    ds = blobs(rng, 4, 3, 1.)
    with pytest.raises(ParameterError):
        classifier.train(ds, c=0.)
    with pytest.raises(ParameterError):
        classifier.train(ds, [])
    with pytest.raises(ParameterError):
        classifier.train(ds, [3])
    with pytest.raises(ParameterError):
        KernelSpec(kind='polynomial')
    with pytest.raises(ParameterError):
        KernelSpec(kind='gaussian', gamma=-1.)
    with pytest.raises(ConvergenceError) as ei:
        classifier.train(LabeledDataset(matrix=[[-1.], [1.]], labels=[0, 1]), max_iter=1)
    assert ei.value.violation == 2.

# Validation
def test_permutation_null(rng: np.random.Generator):
    ds = LabeledDataset(matrix=rng.standard_normal((100, 10)), labels=rng.permutation(np.repeat([0, 1], 50)))
    report = classifier.cross_validate(ds, repeats=5, seed=1, max_threads=2)
    assert 35. <= report.diagonal_mean() <= 65.
    assert np.allclose(report.per_repeat.sum(axis=2), 100.)

def test_signal_is_found(rng: np.random.Generator):
    report = classifier.cross_validate(blobs(rng, 12, 4, 3.), scheme=CVScheme(folds=4), repeats=3, seed=2)
    assert report.diagonal_mean() >= 90.
    assert report.scheme == 'stratified-4-fold' and report.n_features == 4

def test_reproducible_across_threads(rng: np.random.Generator):
    ds = blobs(rng, 10, 5, 1.)
    a = classifier.cross_validate(ds, repeats=4, seed=9, max_threads=1)
    b = classifier.cross_validate(ds, repeats=4, seed=9, max_threads=4)
    assert np.array_equal(a.per_repeat, b.per_repeat)
    c = classifier.cross_validate(ds, repeats=4, seed=10, max_threads=1)
    assert c.n_repeats == 4

def test_single_repeat_has_no_spread(rng: np.random.Generator):
    report = classifier.cross_validate(blobs(rng, 8, 3, 1.), repeats=1, scheme=CVScheme(folds=4))
    assert np.array_equal(report.sd, np.zeros((2, 2)))

def test_leave_one_out(rng: np.random.Generator):
    ds = blobs(rng, 5, 3, 4.)
    report = classifier.cross_validate(ds, [0, 2], scheme=CVScheme(kind='leave-one-subject-out'), repeats=1)
    assert report.scheme == 'leave-one-subject-out'
    assert len(report.selections) == 10
    assert set(report.selections) == {(0, 2)}

def test_in_fold_and_leaky_selection(rng: np.random.Generator):
    ds = blobs(rng, 10, 8, 1.)
    sel = SelectionSpec(k_neighbors=2, n_features=3)
    report = classifier.cross_validate(ds, scheme=CVScheme(folds=4), repeats=2, seed=5, selection=sel)
    assert len(report.selections) == 8
    assert all(len(s) == 3 for s in report.selections)
    assert report.n_features == 3
    leaky = classifier.cross_validate(ds, scheme=CVScheme(folds=4), repeats=2, seed=5,
                                      selection=SelectionSpec(k_neighbors=2, n_features=3, leaky=True))
    assert len(set(leaky.selections)) == 1

def test_test_rows_do_not_steer_selection(rng: np.random.Generator):
    ds = blobs(rng, 10, 8, 1.)
    scheme, sel = CVScheme(kind='leave-one-subject-out'), SelectionSpec(k_neighbors=2, n_features=3)
    base = classifier.cross_validate(ds, scheme=scheme, repeats=1, selection=sel)
    for row in (0, 7, 13):
        m = ds.matrix.copy()
        m[row, 5] += 50. * (1 if ds.labels[row] else -1)
        moved = classifier.cross_validate(LabeledDataset(matrix=m, labels=ds.labels), scheme=scheme, repeats=1, selection=sel)
        assert moved.selections[row] == base.selections[row] # the fold that holds `row` out

def test_missing_values_are_imputed_per_fold(rng: np.random.Generator):
    ds = blobs(rng, 8, 3, 3.)
    ds.matrix[[0, 9], 1] = np.nan
    holes = LabeledDataset(matrix=ds.matrix, labels=ds.labels, allow_missing=True)
    report = classifier.cross_validate(holes, scheme=CVScheme(folds=4), repeats=2)
    assert np.isfinite(report.mean).all()

def test_scheme_errors():
    with pytest.raises(ParameterError):
        CVScheme(kind='bootstrap')
    with pytest.raises(ParameterError):
        CVScheme(folds=1)
    with pytest.raises(ParameterError):
        CVScheme(folds=6).splits(np.repeat([0, 1], 5), 0)
    with pytest.raises(ParameterError):
        SelectionSpec(n_features=0)

def test_report_rendering(tmp_path: Path):
    per_repeat = np.array([[[80., 20.], [25., 75.]], [[90., 10.], [35., 65.]]])
    report = ConfusionReport.from_repeats(per_repeat, scheme='stratified-5-fold', n_features=60)
    assert report.cell(0, 0) == '85.0%±5.0%'
    text = report.render()
    lines = text.splitlines()
    assert lines[0] == 'Confusion matrix (stratified-5-fold, 2 repeat(s), 60 feature(s))'
    assert lines[1].split() == ['true', '\\', 'predicted', 'regular', 'dyslexic']
    assert lines[2].split() == ['regular', '85.0%±5.0%', '15.0%±5.0%']
    assert lines[3].split() == ['dyslexic', '30.0%±5.0%', '70.0%±5.0%']
    assert report.render('Custom').splitlines()[0] == 'Custom'
    back = ConfusionReport.deserialize_from_dict(json.loads(json.dumps(report.serialize_to_dict())))
    assert back.render() == text
    classifier.write_report(report, tmp_path / 'c.txt', tmp_path / 'c.csv')
    assert (tmp_path / 'c.txt').read_text() == text + '\n'
    rows = (tmp_path / 'c.csv').read_text().splitlines()
    assert rows[0] == 'repeat,true,predicted,percent' and len(rows) == 9
    assert rows[1] == '0,regular,regular,80'
