#!/bin/python3

'''End-to-end runs on the full-size synthetic scenarios, in memory'''

#> Imports
import numpy as np
import pytest
from scipy import stats

from erpscope import synth, roi
from erpscope.signal_core import baseline_correct, reject_trials, average_erp
from erpscope.feature_bank import FeatureMatrix, default_registry, extract_feature_matrix, impute_column_means
from erpscope.relieff import LabeledDataset, relieff_weights, select_top_k
from erpscope.classifier import CVScheme, SelectionSpec, cross_validate
#</Imports

#> Header >/
pytestmark = pytest.mark.slow

REPEATS = 5

def features_of(scenario: synth.SynthConfig) -> FeatureMatrix:
    erps = []
    for s in synth.generate_dataset(scenario).subjects:
        kept, _ = reject_trials(map(baseline_correct, s.epochs), 100.)
        erps.append(average_erp(kept, s.subject_id, s.class_label))
    return extract_feature_matrix(erps, default_registry())

def accuracy(fm: FeatureMatrix, n_features: int) -> float:
    ds = LabeledDataset.from_feature_matrix(fm, allow_missing=True)
    report = cross_validate(ds, scheme=CVScheme(folds=5), repeats=REPEATS, seed=0,
                            selection=SelectionSpec(k_neighbors=10, n_features=n_features))
    return report.diagonal_mean()

@pytest.fixture(scope='module')
def benchmark() -> FeatureMatrix:
    return features_of(synth.default_dyslexia_scenario())

def test_feature_vector_size(benchmark: FeatureMatrix):
    assert benchmark.values.shape == (32, 64 * 27)
    assert len(default_registry()) == 27

def test_benchmark_classifies(benchmark: FeatureMatrix):
    best60, best10 = accuracy(benchmark, 60), accuracy(benchmark, 10)
    assert best60 >= 85.
    assert best10 >= 75.
    assert best10 >= .75 * best60

def test_regions_are_recovered(benchmark: FeatureMatrix):
    masked = set(synth.default_dyslexia_scenario().effect_electrodes)
    matrix, _ = impute_column_means(benchmark.values)
    w = relieff_weights(LabeledDataset(matrix=matrix, labels=benchmark.labels(), layout=benchmark.layout), 10)
    top = select_top_k(w, 60)
    per_electrode = roi.attribute_selection(top, w.layout, w)
    on_masked = sum(score.count for e,score in per_electrode.items() if e in masked)
    assert on_masked >= .7 * len(top)
    report = roi.aggregate_regions(per_electrode, roi.load_layout())
    assert report.asymmetry > .4

def test_hp_power_alone_classifies():
    assert accuracy(features_of(synth.hp_only_scenario()), 60) >= 75.

def test_only_masked_electrodes_differ(benchmark: FeatureMatrix):
    masked = set(synth.default_dyslexia_scenario().effect_electrodes)
    labels = benchmark.labels()
    pvalues = {True: [], False: []}
    for col,(electrode,_) in enumerate(benchmark.layout):
        values = benchmark.values[:, col]
        a, b = values[(labels == 0) & ~np.isnan(values)], values[(labels == 1) & ~np.isnan(values)]
        if min(len(a), len(b)) < 5: continue
        pvalues[electrode in masked].append(stats.ks_2samp(a, b).pvalue)
    # unmasked columns share one per-subject draw, so they are tested jointly at the 1% level
    threshold = .01 / len(pvalues[False])
    assert min(pvalues[False]) > threshold
    assert sum(p <= threshold for p in pvalues[True]) >= 5
