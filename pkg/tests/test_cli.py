#!/bin/python3

#> Imports
import json
import shutil
from pathlib import Path

import pytest

from erpscope import cli, synth
from erpscope.__entrypoint__ import VERSION
from erpscope.cli.main import LOCK_NAME, EXIT_OK, EXIT_DATA, EXIT_CONFIG
from erpscope.util.errors import ConfigurationError
#</Imports

#> Header >/
PIPELINE_TOML = '''\
seed = 3
threads = 2

[synth]
scenario = 'scenario.toml'

[select]
k_neighbors = 2
sizes = [20, 5]

[evaluate]
folds = 3
repeats = 2

[roi]
top = 10
'''

def project(root: Path, scenario: synth.SynthConfig, config: str = PIPELINE_TOML) -> Path:
    '''Lays out a project directory with a configuration and a scenario; returns the configuration path'''
    root.mkdir(parents=True, exist_ok=True)
    (root / 'scenario.toml').write_text(scenario.to_toml())
    (root / 'pipeline.toml').write_text(config)
    return root / 'pipeline.toml'

def tree(root: Path) -> dict[str, bytes]:
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob('*')) if p.is_file()}

def small() -> synth.SynthConfig:
    return synth.SynthConfig(n_subjects_per_class=5, trials_per_subject=6, channels=('Fp1', 'Fp2', 'C3', 'C4', 'P7', 'P8'),
                             effect_electrodes=('Fp1', 'P7'), incorrect_rate=0.,
                             classes={'regular': synth.ClassParams(),
                                      'dyslexic': synth.ClassParams(p300_latency_ms=380., p300_amplitude_uv=4.)})

@pytest.fixture(scope='module')
def finished(tmp_path_factory: pytest.TempPathFactory) -> Path:
    '''A project after a full pipeline run'''
    root = tmp_path_factory.mktemp('pipeline') / 'a'
    config = project(root, small())
    assert cli.main(['pipeline', '--config', str(config)]) == EXIT_OK
    return root

# Configuration
def test_defaults_load(tmp_path: Path):
    (tmp_path / 'empty.toml').write_text('')
    cfg = cli.load_config(tmp_path / 'empty.toml')
    assert cfg['select.sizes'] == [60, 10]
    assert cfg.work_dir == tmp_path.resolve() / 'work'
    assert cfg.epoch_meta(256.) == synth.benchmark_meta()
    assert cfg.kernel().kind == 'linear'
    assert cfg.scheme().label == 'stratified-5-fold'
    assert len(cfg.registry()) == 27

@pytest.mark.parametrize(('text', 'field'), (
    ('colour = 1\n', 'colour'),
    ("seed = 'x'\n", 'seed'),
    ('[preprocess]\nlo_hz = 30.0\n', 'preprocess.lo_hz'),
    ('[select]\nsizes = []\n', 'select.sizes'),
    ('[select]\nsizes = [10, 0]\n', 'select.sizes'),
    ('[evaluate]\nfolds = 1\n', 'evaluate.folds'),
    ("[classifier]\nkernel = 'cubic'\n", 'classifier.kernel'),
    ("[extract]\nboundary_mode = 'zero'\n", 'extract.boundary_mode'),
))
def test_invalid_configuration(write_toml, text: str, field: str):
    with pytest.raises(ConfigurationError) as ei:
        cli.load_config(write_toml(text))
    assert ei.value.field == field

def test_scenario_overrides(tmp_path: Path):
    config = project(tmp_path, small(), PIPELINE_TOML.replace("[synth]\n", "[synth]\ntrials_per_subject = 3\n"))
    scenario = cli.load_config(config).scenario()
    assert (scenario.trials_per_subject, scenario.n_subjects_per_class) == (3, 5)
    (tmp_path / 'none.toml').write_text("[synth]\nscenario = ''\n")
    assert cli.load_config(tmp_path / 'none.toml').scenario() is None

def test_parser():
    parser = cli.build_parser()
    args = parser.parse_args(['evaluate', '--config', 'p.toml', '--leaky', '--seed', '4'])
    assert (args.subcommand, args.leaky, args.seed) == ('evaluate', True, 4)
    assert (args.verbose, args.quiet) == (0, False)
    assert parser.parse_args(['train', '--config', 'p.toml', '-vv']).verbose == 2
    with pytest.raises(SystemExit):
        parser.parse_args(['train', '--config', 'p.toml', '-v', '-q'])
    with pytest.raises(SystemExit):
        parser.parse_args(['select', '--config', 'p.toml', '--leaky'])
    with pytest.raises(SystemExit):
        parser.parse_args(['select'])
    with pytest.raises(SystemExit) as ei:
        parser.parse_args(['--version'])
    assert ei.value.code == 0

# Exit status
def test_configuration_errors_exit_2(tmp_path: Path, write_toml):
    assert cli.main(['select', '--config', str(tmp_path / 'missing.toml')]) == EXIT_CONFIG
    assert cli.main(['select', '--config', str(write_toml('colour = 1\n'))]) == EXIT_CONFIG
    assert cli.main(['synth', '--config', str(write_toml("[synth]\nscenario = ''\n", 'none.toml'))]) == EXIT_CONFIG
    assert cli.run_subcommand('bogus', cli.load_config(write_toml(''))) == EXIT_CONFIG

def test_missing_inputs_exit_1(tmp_path: Path):
    config = project(tmp_path, small())
    assert cli.main(['preprocess', '--config', str(config)]) == EXIT_DATA
    assert cli.main(['train', '--config', str(config)]) == EXIT_DATA
    assert cli.main(['report', '--config', str(config)]) == EXIT_DATA
    assert not (tmp_path / 'work' / LOCK_NAME).exists()

# Pipeline
def test_pipeline_artifacts(finished: Path):
    work, out = finished / 'work', finished / 'out'
    assert len(list((work / 'erp').glob('*.erp.csv'))) == 10
    for name in ('features.csv', 'weights.csv', 'model-20.json', 'model-5.json', 'confusion-20.json', 'roi.json'):
        assert (work / name).is_file()
        assert cli.manifest_path(work / name).is_file()
    for name in ('grand-regular.erp.csv', 'grand-dyslexic.erp.csv', 'confusion-5.txt', 'confusion-5.csv',
                 'roi.txt', 'scalp.svg', 'report.txt', 'weights.svg'):
        assert (out / name).is_file()
    assert not (work / LOCK_NAME).exists()
    header = (work / 'features.csv').read_text().splitlines()[0].split(',')
    assert len(header) == 2 + 6 * 27

def test_manifests(finished: Path):
    doc = cli.read_manifest(finished / 'work' / 'features.csv')
    assert (doc['stage'], doc['artifact'], doc['version']) == ('extract', 'work/features.csv', VERSION)
    assert list(doc['outputs']) == ['work/features.csv']
    assert len(doc['inputs']) == 10
    assert doc['parameters']['registry_size'] == 27
    train = cli.read_manifest(finished / 'work' / 'model-5.json')
    assert train['parameters']['n_features'] == 5 and isinstance(train['seed'], int)
    assert set(train['inputs']) == {'work/features.csv', 'work/weights.csv'}
    synthetic = cli.read_manifest(finished / 'data' / 'subjects.csv')
    assert 'data/S001/trial-001.csv' in synthetic['outputs']

def test_models_and_reports(finished: Path):
    model = json.loads((finished / 'work' / 'model-5.json').read_text())
    assert len(model['model']['feature_subset']) == 5
    assert len(model['columns']) == len(model['impute_means']) == 6 * 27
    text = (finished / 'out' / 'confusion-20.txt').read_text()
    assert text.startswith('Classification with the best 20 features (stratified-3-fold, 2 repeat(s))')
    assert '%±' in text
    report = (finished / 'out' / 'report.txt').read_text().splitlines()
    assert report[0] == f'ERPScope {VERSION} report'
    assert report[2].startswith('10 subject(s) (5 regular, 5 dyslexic), 6 electrode(s), 162 feature(s)')
    summary = json.loads((finished / 'work' / 'roi.json').read_text())
    assert summary['top'] == 10
    assert sum(summary['hemispheres'].values()) == 10
    assert set(summary['selected']) <= {'Fp1', 'Fp2', 'C3', 'C4', 'P7', 'P8'}

def test_stages_match_the_pipeline(finished: Path, tmp_path: Path):
    config = project(tmp_path / 'b', small())
    for name in cli.PIPELINE_ORDER:
        assert cli.main([name, '--config', str(config)]) == EXIT_OK, name
    assert tree(tmp_path / 'b') == tree(finished)

def test_leaky_evaluation_and_stage_dir(finished: Path, tmp_path: Path):
    root = tmp_path / 'c'
    shutil.copytree(finished, root)
    config = root / 'pipeline.toml'
    assert cli.main(['evaluate', '--config', str(config), '--leaky']) == EXIT_OK
    assert 'leaky selection' in (root / 'out' / 'confusion-5.txt').read_text()
    assert cli.read_manifest(root / 'work' / 'confusion-5.json')['parameters']['leaky'] is True
    elsewhere = tmp_path / 'elsewhere'
    assert cli.main(['preprocess', '--config', str(config), '--stage-dir', str(elsewhere)]) == EXIT_OK
    assert len(list((elsewhere / 'erp').glob('*.erp.csv'))) == 10

def test_held_lock_exits_1(finished: Path, tmp_path: Path):
    root = tmp_path / 'd'
    shutil.copytree(finished, root)
    (root / 'work' / LOCK_NAME).write_text('someone else')
    assert cli.main(['select', '--config', str(root / 'pipeline.toml')]) == EXIT_DATA
    assert (root / 'work' / LOCK_NAME).read_text() == 'someone else'

def test_oversized_selection_exits_2(finished: Path, tmp_path: Path):
    root = tmp_path / 'e'
    shutil.copytree(finished, root)
    (root / 'pipeline.toml').write_text(PIPELINE_TOML.replace('sizes = [20, 5]', 'sizes = [500]'))
    assert cli.main(['select', '--config', str(root / 'pipeline.toml')]) == EXIT_CONFIG

def test_oversized_neighbourhood_exits_2(finished: Path, tmp_path: Path):
    root = tmp_path / 'f'
    shutil.copytree(finished, root)
    config = root / 'pipeline.toml'
    config.write_text(PIPELINE_TOML.replace('k_neighbors = 2', 'k_neighbors = 5'))
    assert cli.main(['select', '--config', str(config)]) == EXIT_CONFIG
    # 5 subjects per class and 3 folds leave 3 per class in a training fold
    config.write_text(PIPELINE_TOML.replace('k_neighbors = 2', 'k_neighbors = 3'))
    assert cli.main(['select', '--config', str(config)]) == EXIT_OK
    assert cli.main(['evaluate', '--config', str(config)]) == EXIT_CONFIG
    assert cli.main(['evaluate', '--config', str(config), '--leaky']) == EXIT_OK

@pytest.mark.parametrize(('text', 'counts', 'in_folds', 'field'), (
    ('[select]\nk_neighbors = 4\n', (4, 9), False, 'select.k_neighbors'),
    ('[select]\nk_neighbors = 3\n[evaluate]\nfolds = 4\n', (4, 9), True, 'select.k_neighbors'),
    ('[evaluate]\nfolds = 5\n', (4, 9), True, 'evaluate.folds'),
    ('[select]\nk_neighbors = 3\n[evaluate]\nscheme = \'leave-one-subject-out\'\n', (4, 9), True, 'select.k_neighbors'),
))
def test_neighbourhood_checks_name_their_field(write_toml, text: str, counts: tuple[int, int], in_folds: bool, field: str):
    cfg = cli.load_config(write_toml(text))
    with pytest.raises(ConfigurationError) as ei:
        cfg.check_neighbors(counts, in_folds=in_folds)
    assert ei.value.field == field

def test_neighbourhood_within_folds(write_toml):
    cfg = cli.load_config(write_toml('[select]\nk_neighbors = 2\n[evaluate]\nfolds = 3\n'))
    cfg.check_neighbors((5, 5))
    cfg.check_neighbors((5, 5), in_folds=True)
