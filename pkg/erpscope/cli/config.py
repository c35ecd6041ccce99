#!/bin/python3

'''
    Pipeline configuration

    A configuration file is TOML with one table per stage (see `erpscope/data/pipeline.toml`,
        whose values are the defaults). It is flattened onto the defaults, checked key by key,
        and exposed through typed accessors
'''

#> Imports
import math
import typing
import tomllib
from pathlib import Path
from functools import cache

from . import logger
from .. import wavelet, classifier, roi, synth
from ..feature_bank import FeatureDescriptor, load_registry, default_registry
from ..signal_core import SamplingMeta
from ..util.errors import ConfigurationError, ParameterError
from ..util.singleton.config import Config
from ..util.tools.flattools import flatten_map
#</Imports

#> Header >/
__all__ = ('DEFAULT_CONFIG', 'PipelineConfig', 'default_config_map', 'load_config')

DEFAULT_CONFIG = Path(__file__).parent.parent / 'data' / 'pipeline.toml'

type _Check = typing.Callable[[typing.Any], bool]

def _choice(*options: str) -> tuple[_Check, str]:
    return (lambda v: v in options), f'one of {", ".join(map(repr, options))}'
_POSITIVE = ((lambda v: v > 0), 'positive')
_NONNEGATIVE = ((lambda v: v >= 0), 'nonnegative')
# dotted key -> (check, description); types are checked against the defaults
_CHECKS: dict[str, tuple[_Check, str]] = {
    'threads': _POSITIVE,
    'synth.format': _choice('epochs', 'continuous'),
    'synth.n_subjects_per_class': _NONNEGATIVE,
    'synth.trials_per_subject': _NONNEGATIVE,
    'preprocess.lo_hz': _NONNEGATIVE,
    'preprocess.hi_hz': _POSITIVE,
    'preprocess.transition_hz': _NONNEGATIVE,
    'preprocess.decimate': _POSITIVE,
    'preprocess.pre_stimulus_ms': _NONNEGATIVE,
    'preprocess.post_stimulus_ms': _POSITIVE,
    'preprocess.reject_uv': _POSITIVE,
    'extract.wavelet_order': ((lambda v: 1 <= v <= 6), 'within [1, 6]'),
    'extract.levels': _POSITIVE,
    'extract.boundary_mode': _choice(*wavelet.BOUNDARY_MODES),
    'select.k_neighbors': _POSITIVE,
    'select.sizes': ((lambda v: bool(v) and all(isinstance(s, int) and not isinstance(s, bool) and s > 0 for s in v)),
                     'a nonempty list of positive integers'),
    'classifier.kernel': _choice(*classifier.kernels.KERNEL_KINDS),
    'classifier.gamma': _NONNEGATIVE,
    'classifier.c': _POSITIVE,
    'evaluate.scheme': _choice(*classifier.validation.CV_KINDS),
    'evaluate.folds': ((lambda v: v >= 2), 'at least 2'),
    'evaluate.repeats': _POSITIVE,
    'roi.top': _POSITIVE,
}

def _check_type(key: str, value: typing.Any, default: typing.Any):
    want = type(default)
    if want is float: ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    elif want is int: ok = isinstance(value, int) and not isinstance(value, bool)
    else: ok = isinstance(value, want)
    if not ok:
        raise ConfigurationError(f'{key} must be of type {want.__name__}, got {type(value).__name__} ({value!r})', key)

class PipelineConfig:
    '''A validated pipeline configuration; relative paths resolve against `base_dir`'''
    __slots__ = ('config', 'base_dir', 'leaky_override')

    def __init__(self, config: Config, base_dir: Path):
        self.config = config
        self.base_dir = base_dir
        self.leaky_override = False
        self.validate()

    def __getitem__(self, key: str) -> typing.Any:
        return self.config[key]
    def validate(self):
        defaults = flatten_map(default_config_map())
        for key,value in self.config.items():
            _check_type(key, value, defaults[key])
            check = _CHECKS.get(key, None)
            if (check is not None) and not check[0](value):
                raise ConfigurationError(f'{key} must be {check[1]}, got {value!r}', key)
        if not (self['preprocess.lo_hz'] < self['preprocess.hi_hz']):
            raise ConfigurationError('preprocess.lo_hz must be below preprocess.hi_hz', 'preprocess.lo_hz')

    def set_overrides(self, *, seed: int | None = None, stage_dir: Path | None = None, leaky: bool = False):
        '''Applies command-line overrides'''
        if seed is not None: self.config['seed'] = int(seed)
        if stage_dir is not None: self.config['paths.work_dir'] = str(stage_dir)
        self.leaky_override = bool(leaky)

    # Paths
    def path(self, key: str) -> Path:
        p = Path(self[key]).expanduser()
        return p if p.is_absolute() else (self.base_dir / p)
    @property
    def input_dir(self) -> Path:
        return self.path('paths.input_dir')
    @property
    def work_dir(self) -> Path:
        return self.path('paths.work_dir')
    @property
    def output_dir(self) -> Path:
        return self.path('paths.output_dir')
    @property
    def seed(self) -> int:
        return self['seed']
    @property
    def threads(self) -> int:
        return self['threads']

    # Typed views
    def scenario(self) -> synth.SynthConfig | None:
        '''The configured synthetic scenario (with any size overrides), or `None` if synthesis is disabled'''
        name = self['synth.scenario']
        if not name: return None
        if name == 'default': cfg = synth.default_dyslexia_scenario()
        elif name == 'hp-only': cfg = synth.hp_only_scenario()
        else:
            try: cfg = synth.load_scenario(self.path('synth.scenario'))
            except ConfigurationError as e:
                e.field = 'synth.scenario'
                raise
        overrides = {k: self[f'synth.{k}'] for k in ('n_subjects_per_class', 'trials_per_subject') if self[f'synth.{k}']}
        if not overrides: return cfg
        try: return synth.SynthConfig.deserialize_from_dict(cfg.serialize_to_dict() | overrides)
        except ParameterError as e:
            raise ConfigurationError(str(e), 'synth') from e
    def epoch_meta(self, rate_hz: float) -> SamplingMeta:
        '''Epoch geometry at `rate_hz`, from the configured pre- and post-stimulus spans'''
        return SamplingMeta(rate_hz=rate_hz,
                            pre_stimulus_samples=round(self['preprocess.pre_stimulus_ms'] * rate_hz / 1000.),
                            post_stimulus_samples=max(1, round(self['preprocess.post_stimulus_ms'] * rate_hz / 1000.)))
    def wavelet_filters(self) -> wavelet.WaveletFilterPair:
        return wavelet.daubechies_filters(self['extract.wavelet_order'])
    def registry(self) -> tuple[FeatureDescriptor, ...]:
        if not self['extract.registry']: return default_registry()
        try: return load_registry(self.path('extract.registry'))
        except ConfigurationError as e:
            e.add_note(f'Registry configured by extract.registry = {self["extract.registry"]!r}')
            raise
    def layout(self) -> roi.ElectrodeLayout:
        if not self['roi.layout']: return roi.load_layout()
        return roi.load_layout(self.path('roi.layout'))
    def kernel(self) -> classifier.KernelSpec:
        gamma = self['classifier.gamma']
        return classifier.KernelSpec(kind=self['classifier.kernel'], gamma=(float(gamma) or None) if self['classifier.kernel'] == 'gaussian' else None)
    def scheme(self) -> classifier.CVScheme:
        return classifier.CVScheme(kind=self['evaluate.scheme'], folds=self['evaluate.folds'])
    @property
    def leaky(self) -> bool:
        return self.leaky_override or self['evaluate.leaky']
    def selection(self, n_features: int) -> classifier.SelectionSpec:
        return classifier.SelectionSpec(k_neighbors=self['select.k_neighbors'], n_features=n_features, leaky=self.leaky)
    def check_sizes(self, n_features: int):
        '''Selection sizes (and the ROI count) must not exceed the feature count'''
        for key,vals in (('select.sizes', self['select.sizes']), ('roi.top', [self['roi.top']])):
            if max(vals) > n_features:
                raise ConfigurationError(f'{key} asks for {max(vals)} feature(s), but only {n_features} exist', key)
    def check_neighbors(self, class_counts: tuple[int, int], *, in_folds: bool = False):
        '''
            ReliefF needs more than `select.k_neighbors` subjects in each class
                With `in_folds`, the smallest training fold of the configured scheme is checked instead of all subjects
        '''
        smallest, where = min(class_counts), 'the smallest class'
        if in_folds:
            if self['evaluate.scheme'] == 'leave-one-subject-out': smallest -= 1
            else:
                folds = self['evaluate.folds']
                if folds > smallest:
                    raise ConfigurationError(f'evaluate.folds asks for {folds} folds, but the smallest class has '
                                             f'only {smallest} subject(s)', 'evaluate.folds')
                smallest -= math.ceil(smallest / folds)
            where = 'the smallest class of a training fold'
        k = self['select.k_neighbors']
        if k >= smallest:
            exc = ConfigurationError(f'select.k_neighbors is {k}, but {where} holds only {smallest} subject(s)',
                                     'select.k_neighbors')
            exc.add_note(f'Class sizes: {class_counts[0]} and {class_counts[1]}')
            raise exc

@cache
def default_config_map() -> dict[str, typing.Any]:
    '''The shipped defaults, as a nested mapping (not to be mutated)'''
    return tomllib.loads(DEFAULT_CONFIG.read_text())

def load_config(path: Path) -> PipelineConfig:
    '''Loads and validates the configuration at `path` over the shipped defaults'''
    if not path.is_file():
        raise ConfigurationError(f'Configuration file {path} does not exist', 'config')
    cfg = PipelineConfig(Config.loadf(path, defaults=default_config_map()), path.resolve().parent)
    logger.verbose(f'Loaded configuration from {path} '
                   f'({sum(not cfg.config.is_default(k) for k in cfg.config)} key(s) set)')
    return cfg
