#!/bin/python3

'''
    The pipeline stages

    Each stage reads the artifacts of the stages before it, writes its own along with a manifest,
        and returns the paths it wrote, so running the stages one at a time writes the same bytes
        as a single `pipeline` run

    Artifacts (I = paths.input_dir, W = paths.work_dir, O = paths.output_dir):
        synth       I/subjects.csv, I/scenario.toml, I/<subject>/trial-###.csv or I/<subject>.csv
        preprocess  W/erp/<subject>.erp.csv, O/grand-<class>.erp.csv
        extract     W/features.csv
        select      W/weights.csv
        train       W/model-<n>.json
        evaluate    W/confusion-<n>.json, O/confusion-<n>.txt, O/confusion-<n>.csv
        roi         W/roi.json, O/roi.txt, O/scalp.svg
        report      O/report.txt, O/weights.svg
'''

#> Imports
import json
import typing
from pathlib import Path
from functools import partial
from collections import Counter

import numpy as np

from . import logger
from .config import PipelineConfig
from .manifest import write_manifest
from .. import signal_core, synth, roi
from ..__entrypoint__ import VERSION
from ..signal_core import CLASS_LABELS, ContinuousRecording, Epoch, ErpAverage, io
from ..feature_bank import FeatureMatrix, extract_feature_matrix, impute_column_means, write_feature_matrix, read_feature_matrix
from ..relieff import LabeledDataset, relieff_weights, select_top_k, write_weights, read_weights, render_weight_profile
from ..classifier import ConfusionReport, train, cross_validate, write_report
from ..util.parallel import thread_map
from ..util.errors import ConfigurationError, DataError, OutputError
from ..util.tools.hashtools import stage_seed
#</Imports

#> Header >/
__all__ = ('Stage', 'STAGES', 'PIPELINE_ORDER',
           'run_synth', 'run_preprocess', 'run_extract', 'run_select', 'run_train',
           'run_evaluate', 'run_roi', 'run_report', 'run_pipeline')

type Stage = typing.Callable[[PipelineConfig], list[Path]]

PIPELINE_ORDER = ('synth', 'preprocess', 'extract', 'select', 'train', 'evaluate', 'roi', 'report')

# Helpers
def _mkdir(path: Path) -> Path:
    try: path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f'Could not create {path}: {e}') from e
    return path
def _write_text(path: Path, text: str):
    try: path.write_text(text)
    except OSError as e:
        raise OutputError(f'Could not write {path}: {e}') from e
def _write_json(path: Path, doc: typing.Mapping):
    _write_text(path, json.dumps(doc, sort_keys=True, indent=1) + '\n')
def _read_json(path: Path) -> dict:
    try: return json.loads(path.read_text())
    except FileNotFoundError as e:
        exc = DataError(f'{path} does not exist', path)
        exc.add_note('Run the stage that writes it first')
        raise exc from e
    except json.JSONDecodeError as e:
        raise DataError(f'Malformed JSON in {path}: {e}', path) from e

def _manifest(cfg: PipelineConfig, artifact: Path, stage: str, *, inputs: typing.Iterable[Path] = (),
              outputs: typing.Iterable[Path] = (), parameters: typing.Mapping, seed: int | None = None):
    write_manifest(artifact, stage, inputs=inputs, outputs=outputs, parameters=parameters, seed=seed,
                   version=VERSION, root=cfg.base_dir, max_threads=cfg.threads)

def _imputed(fm: FeatureMatrix) -> tuple[LabeledDataset, np.ndarray]:
    '''The dataset of `fm` with missing values replaced by column means, and those means'''
    matrix, means = impute_column_means(fm.values)
    return LabeledDataset(matrix=matrix, labels=fm.labels(), layout=fm.layout), means

# synth
def run_synth(cfg: PipelineConfig) -> list[Path]:
    '''Generates the configured synthetic scenario into paths.input_dir'''
    scenario = cfg.scenario()
    if scenario is None:
        raise ConfigurationError('No synthetic scenario is configured (synth.scenario is empty)', 'synth.scenario')
    seed = stage_seed(cfg.seed, 'synth')
    ds = synth.generate_dataset(scenario.with_seed(seed), max_threads=cfg.threads)
    paths = synth.write_dataset(ds, cfg.input_dir, continuous=(cfg['synth.format'] == 'continuous'),
                                max_threads=cfg.threads)
    _manifest(cfg, cfg.input_dir / 'subjects.csv', 'synth', outputs=paths,
              parameters=cfg.config.section('synth'), seed=seed)
    return paths

# preprocess
class _Preprocessed(typing.NamedTuple):
    erp: ErpAverage
    inputs: list[Path]
    rejected: Counter

def _recording_epochs(cfg: PipelineConfig, path: Path) -> list[Epoch]:
    rec = io.read_recording(path)
    samples, rate, events = rec.samples, rec.rate_hz, rec.events
    if cfg['preprocess.filter']:
        samples = signal_core.bandpass_filter(samples, rate, cfg['preprocess.lo_hz'], cfg['preprocess.hi_hz'],
                                              transition_hz=(cfg['preprocess.transition_hz'] or None))
    if (factor := cfg['preprocess.decimate']) > 1:
        samples, rate = signal_core.decimate(samples, rate, factor)
        events = tuple(e._replace(sample_index=e.sample_index // factor) for e in events)
    seg = signal_core.segment_epochs(ContinuousRecording(channels=rec.channels, samples=samples, rate_hz=rate, events=events),
                                     cfg.epoch_meta(rate))
    if seg.skipped: logger.info(f'{path.name}: {len(seg.skipped)} event(s) too close to the recording edges')
    return seg.epochs

def _preprocess_subject(subject: tuple[str, str | None], cfg: PipelineConfig) -> _Preprocessed:
    sid, label = subject
    sdir, rec = cfg.input_dir / sid, cfg.input_dir / f'{sid}.csv'
    if sdir.is_dir():
        source, inputs = sdir, sorted(sdir.glob('*.csv'))
        epochs = io.read_epoch_dir(sdir)
    elif rec.is_file():
        source, inputs = rec, [p for p in (rec, io.events_path(rec)) if p.is_file()]
        epochs = _recording_epochs(cfg, rec)
    else:
        exc = DataError(f'No data for subject {sid}', sdir)
        exc.add_note(f'Looked for the epoch directory {sdir} and the recording {rec}')
        raise exc
    kept, rejected = signal_core.reject_trials(map(signal_core.baseline_correct, epochs), cfg['preprocess.reject_uv'])
    if cond := cfg['preprocess.condition']:
        erp = signal_core.average_by_condition(kept, sid, label).get(cond, None)
    else: erp = signal_core.average_erp(kept, sid, label) if kept else None
    if erp is None:
        exc = DataError(f'No trial of subject {sid} survived preprocessing', source)
        exc.add_note(f'{len(epochs)} epoch(s), rejected: {dict(rejected) or "none"}'
                     + (f', condition filter {cond!r}' if cond else ''))
        raise exc
    logger.verbose(f'{sid}: averaged {erp.n_trials} of {len(epochs)} trial(s)')
    return _Preprocessed(erp, inputs, rejected)

def run_preprocess(cfg: PipelineConfig) -> list[Path]:
    '''
        Epochs, baseline-corrects, cleans and averages every subject listed in paths.input_dir/subjects.csv
            Continuous recordings are band-passed and decimated first; pre-epoched subjects are used as stored
    '''
    index = cfg.input_dir / 'subjects.csv'
    subjects = io.read_subjects(index)
    if not subjects: raise DataError(f'{index} lists no subjects', index)
    results = thread_map(partial(_preprocess_subject, cfg=cfg), subjects, cfg.threads)
    erp_dir = _mkdir(cfg.work_dir / 'erp')
    for stale in erp_dir.glob('*.erp.csv'): stale.unlink()
    paths = []
    for r in results:
        paths.append(erp_dir / f'{r.erp.subject_id}.erp.csv')
        io.write_erp(r.erp, paths[-1])
    out = _mkdir(cfg.output_dir)
    for label in CLASS_LABELS:
        group = [r.erp for r in results if r.erp.class_label == label]
        if not group: continue
        paths.append(out / f'grand-{label}.erp.csv')
        io.write_erp(signal_core.grand_average(group), paths[-1])
    rejected = sum((r.rejected for r in results), Counter())
    logger.terse(f'Preprocessed {len(results)} subject(s): {sum(r.erp.n_trials for r in results)} trial(s) averaged, '
                 f'{rejected.total()} rejected')
    _manifest(cfg, erp_dir, 'preprocess', inputs=[index, *(p for r in results for p in r.inputs)], outputs=paths,
              parameters=cfg.config.section('preprocess'))
    return paths

# extract
def run_extract(cfg: PipelineConfig) -> list[Path]:
    '''Splits every subject's ERP into its LP and HP parts and evaluates the feature registry on them'''
    erp_dir = cfg.work_dir / 'erp'
    erps = io.read_erp_dir(erp_dir)
    if not erps:
        exc = DataError(f'{erp_dir} holds no ERP averages', erp_dir)
        exc.add_note('Run preprocess first')
        raise exc
    registry = cfg.registry()
    fm = extract_feature_matrix(erps, registry, cfg['extract.levels'], filters=cfg.wavelet_filters(),
                                boundary_mode=cfg['extract.boundary_mode'], max_threads=cfg.threads)
    path = cfg.work_dir / 'features.csv'
    write_feature_matrix(fm, path)
    inputs = sorted(erp_dir.glob('*.erp.csv'))
    if cfg['extract.registry']: inputs.append(cfg.path('extract.registry'))
    _manifest(cfg, path, 'extract', inputs=inputs, outputs=(path,),
              parameters=cfg.config.section('extract') | {'registry_size': len(registry)})
    return [path]

# select
def run_select(cfg: PipelineConfig) -> list[Path]:
    '''Weights every feature with ReliefF over all subjects'''
    src = cfg.work_dir / 'features.csv'
    fm = read_feature_matrix(src)
    cfg.check_sizes(fm.values.shape[1])
    ds, _ = _imputed(fm)
    cfg.check_neighbors(ds.class_counts())
    w = relieff_weights(ds, cfg['select.k_neighbors'])
    path = cfg.work_dir / 'weights.csv'
    write_weights(w, path)
    _manifest(cfg, path, 'select', inputs=(src,), outputs=(path,), parameters=cfg.config.section('select'))
    return [path]

def _matched_weights(cfg: PipelineConfig, fm: FeatureMatrix, src: Path):
    wsrc = cfg.work_dir / 'weights.csv'
    w = read_weights(wsrc)
    if w.layout != fm.layout:
        exc = DataError(f'{wsrc} does not describe the columns of {src}', wsrc)
        exc.add_note('Rerun select after extract')
        raise exc
    return w, wsrc

# train
def run_train(cfg: PipelineConfig) -> list[Path]:
    '''Trains one model per selection size on every subject, over the best-weighted features'''
    src = cfg.work_dir / 'features.csv'
    fm = read_feature_matrix(src)
    w, wsrc = _matched_weights(cfg, fm, src)
    cfg.check_sizes(len(w))
    ds, means = _imputed(fm)
    seed = stage_seed(cfg.seed, 'train')
    kernel = cfg.kernel()
    paths = []
    for n in cfg['select.sizes']:
        model = train(ds, select_top_k(w, n), kernel, cfg['classifier.c'], seed)
        path = cfg.work_dir / f'model-{n}.json'
        _write_json(path, {'model': model.serialize_to_dict(), 'impute_means': means.tolist(), 'columns': list(fm.columns)})
        _manifest(cfg, path, 'train', inputs=(src, wsrc), outputs=(path,),
                  parameters=cfg.config.section('classifier') | {'n_features': n}, seed=seed)
        paths.append(path)
    logger.terse(f'Trained {len(paths)} model(s) on {ds.n_samples} subject(s)')
    return paths

# evaluate
def run_evaluate(cfg: PipelineConfig) -> list[Path]:
    '''
        Cross-validates once per selection size
            Features are selected inside every training fold, unless the selection is leaky
    '''
    src = cfg.work_dir / 'features.csv'
    fm = read_feature_matrix(src)
    cfg.check_sizes(fm.values.shape[1])
    ds = LabeledDataset.from_feature_matrix(fm, allow_missing=True)
    cfg.check_neighbors(ds.class_counts(), in_folds=not cfg.leaky)
    seed = stage_seed(cfg.seed, 'evaluate')
    out = _mkdir(cfg.output_dir)
    params = (cfg.config.section('classifier') | cfg.config.section('evaluate')
              | {'k_neighbors': cfg['select.k_neighbors'], 'leaky': cfg.leaky})
    paths = []
    for n in cfg['select.sizes']:
        report = cross_validate(ds, kernel=cfg.kernel(), c=cfg['classifier.c'], scheme=cfg.scheme(),
                                repeats=cfg['evaluate.repeats'], seed=seed, selection=cfg.selection(n),
                                max_threads=cfg.threads)
        title = (f'Classification with the best {n} features ({report.scheme}, {report.n_repeats} repeat(s)'
                 + (', leaky selection)' if cfg.leaky else ')'))
        txt, csv, doc = out / f'confusion-{n}.txt', out / f'confusion-{n}.csv', cfg.work_dir / f'confusion-{n}.json'
        write_report(report, txt, csv, title=title)
        _write_json(doc, report.serialize_to_dict() | {'title': title})
        _manifest(cfg, doc, 'evaluate', inputs=(src,), outputs=(doc, txt, csv),
                  parameters=params | {'n_features': n}, seed=seed)
        paths.extend((doc, txt, csv))
    return paths

# roi
def _roi_summary(report: roi.RegionReport, n: int) -> dict:
    return {'top': n, 'asymmetry': report.asymmetry, 'weight_asymmetry': report.weight_asymmetry,
            'hemispheres': {h: report.hemisphere_score(h).count for h in roi.HEMISPHERES},
            'regions': {f'{h}-{r}': s.count for (h, r),s in report.per_region.items()},
            'selected': list(report.selected())}

def run_roi(cfg: PipelineConfig) -> list[Path]:
    '''Maps the best-weighted features onto electrodes, scalp regions and hemispheres'''
    wsrc = cfg.work_dir / 'weights.csv'
    w = read_weights(wsrc)
    cfg.check_sizes(len(w))
    top = select_top_k(w, cfg['roi.top'])
    layout = cfg.layout()
    report = roi.aggregate_regions(roi.attribute_selection(top, w.layout, w), layout)
    roster = roi.feature_roster(top, w.layout, cfg.registry())
    out = _mkdir(cfg.output_dir)
    txt, svg, doc = out / 'roi.txt', out / 'scalp.svg', cfg.work_dir / 'roi.json'
    _write_text(txt, roi.render_region_report(report, title=f'Regions of the best {len(top)} features')
                     + '\n\n' + roi.render_roster(roster) + '\n')
    roi.render_scalp_map(report, layout, svg, title=f'Electrodes carrying the best {len(top)} features')
    _write_json(doc, _roi_summary(report, len(top)))
    _manifest(cfg, doc, 'roi', inputs=[wsrc, *(cfg.path(k) for k in ('roi.layout', 'extract.registry') if cfg[k])],
              outputs=(doc, txt, svg), parameters=cfg.config.section('roi'))
    return [doc, txt, svg]

# report
def run_report(cfg: PipelineConfig) -> list[Path]:
    '''Collects the feature roster, the confusion tables and the ROI summary, and plots the weight profile'''
    src, rsrc = cfg.work_dir / 'features.csv', cfg.work_dir / 'roi.json'
    fm = read_feature_matrix(src)
    w, wsrc = _matched_weights(cfg, fm, src)
    cfg.check_sizes(len(w))
    best = max(cfg['select.sizes'])
    confusions = [cfg.work_dir / f'confusion-{n}.json' for n in cfg['select.sizes']]
    summary = _read_json(rsrc)
    counts = ', '.join(f'{fm.class_labels.count(l)} {l}' for l in CLASS_LABELS)
    lines = [f'ERPScope {VERSION} report', '',
             f'{len(fm.subject_ids)} subject(s) ({counts}), {len(fm.electrodes)} electrode(s), {len(fm.columns)} feature(s)',
             '', roi.render_roster(roi.feature_roster(select_top_k(w, best), w.layout, cfg.registry()),
                                   title=f'Most selected features among the best {best}')]
    for p in confusions:
        doc = _read_json(p)
        lines.extend(('', ConfusionReport.deserialize_from_dict(doc).render(doc.get('title', None))))
    lines.extend(('', f'Regions of the best {summary["top"]} features',
                  '  ' + ', '.join(f'{h}: {c}' for h,c in summary['hemispheres'].items()),
                  f'  Asymmetry index (counts): {summary["asymmetry"]:+.3f}',
                  f'  Asymmetry index (weights): {summary["weight_asymmetry"]:+.3f}',
                  f'  Selected electrodes: {", ".join(summary["selected"]) or "none"}'))
    out = _mkdir(cfg.output_dir)
    txt, svg = out / 'report.txt', out / 'weights.svg'
    _write_text(txt, '\n'.join(lines) + '\n')
    render_weight_profile(w, svg, highlight=best)
    _manifest(cfg, txt, 'report', inputs=(src, wsrc, rsrc, *confusions), outputs=(txt, svg),
              parameters={'sizes': list(cfg['select.sizes'])})
    logger.terse(f'Report written to {txt}')
    return [txt, svg]

# pipeline
def run_pipeline(cfg: PipelineConfig) -> list[Path]:
    '''Runs every stage in order; synthesis is skipped when no scenario is configured'''
    paths = []
    for name in PIPELINE_ORDER:
        if (name == 'synth') and not cfg['synth.scenario']:
            logger.info('No synthetic scenario configured, using the data already in paths.input_dir')
            continue
        logger.verbose(f'Running stage {name}')
        paths.extend(STAGES[name](cfg))
    return paths

STAGES: dict[str, Stage] = {
    'synth': run_synth,
    'preprocess': run_preprocess,
    'extract': run_extract,
    'select': run_select,
    'train': run_train,
    'evaluate': run_evaluate,
    'roi': run_roi,
    'report': run_report,
    'pipeline': run_pipeline,
}
