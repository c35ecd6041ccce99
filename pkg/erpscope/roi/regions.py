#!/bin/python3

'''Attribution of selected features to electrodes, scalp regions and hemispheres'''

#> Imports
import math
import typing
from collections import Counter
from types import MappingProxyType
from dataclasses import dataclass

import numpy as np

from . import logger
from .layout import HEMISPHERES, REGIONS, ElectrodeLayout
from ..relieff import WeightVector
from ..util.errors import ParameterError, ConfigurationError
#</Imports

#> Header >/
__all__ = ('ElectrodeScore', 'RegionReport', 'RosterEntry',
           'attribute_selection', 'asymmetry_index', 'aggregate_regions',
           'render_region_report', 'feature_roster', 'render_roster')

type Layout = typing.Sequence[tuple[str, str]] # (electrode, feature name) per column

class ElectrodeScore(typing.NamedTuple):
    count: int
    weight_sum: float

def _check_indices(selected: typing.Sequence[int], n: int) -> list[int]:
    idxs = [int(i) for i in selected]
    bad = [i for i in idxs if not (0 <= i < n)]
    if bad: raise ParameterError(f'Selected feature index(es) {bad} out of range for {n} column(s)')
    dups = sorted(i for i,c in Counter(idxs).items() if c > 1)
    if dups: raise ParameterError(f'Feature index(es) {dups} selected more than once')
    return idxs

def attribute_selection(selected: typing.Sequence[int], layout_of_vector: Layout,
                        weights: WeightVector | np.ndarray | None = None) -> dict[str, ElectrodeScore]:
    '''
        Tallies the selected features per electrode
            Every electrode of `layout_of_vector` is present (in first-appearance order), unselected ones at zero
            Weight sums are 0 without `weights`
    '''
    idxs = _check_indices(selected, len(layout_of_vector))
    if weights is not None:
        weights = np.asarray(getattr(weights, 'weights', weights), dtype=float)
        if len(weights) != len(layout_of_vector):
            raise ParameterError(f'{len(weights)} weight(s) given for {len(layout_of_vector)} column(s)')
    counts = dict.fromkeys((e for e,_ in layout_of_vector), 0)
    parts = {e: [] for e in counts}
    for i in idxs:
        e = layout_of_vector[i][0]
        counts[e] += 1
        if weights is not None: parts[e].append(weights[i])
    return {e: ElectrodeScore(counts[e], math.fsum(parts[e])) for e in counts}

def asymmetry_index(left: float, right: float) -> float:
    '''(L - R) / (L + R), or 0 when L + R is 0'''
    total = left + right
    return 0. if total == 0 else (left - right) / total

def _hemisphere_score(per_region: typing.Mapping[tuple[str, str], ElectrodeScore], hemisphere: str) -> ElectrodeScore:
    scores = [per_region[hemisphere, r] for r in REGIONS]
    return ElectrodeScore(sum(s.count for s in scores), math.fsum(s.weight_sum for s in scores))

@dataclass(slots=True, kw_only=True, weakref_slot=True, frozen=True)
class RegionReport:
    '''
        Selection tallies per electrode and per (hemisphere, region)
            `asymmetry` is computed over hemispheric counts, `weight_asymmetry` over hemispheric weight sums
    '''
    per_electrode: typing.Mapping[str, ElectrodeScore]
    per_region: typing.Mapping[tuple[str, str], ElectrodeScore]
    asymmetry: float
    weight_asymmetry: float

    @property
    def total_count(self) -> int:
        return sum(s.count for s in self.per_region.values())
    def hemisphere_score(self, hemisphere: str) -> ElectrodeScore:
        return _hemisphere_score(self.per_region, hemisphere)
    def selected(self) -> tuple[str, ...]:
        '''Labels of electrodes with at least one selected feature'''
        return tuple(e for e,s in self.per_electrode.items() if s.count)

def aggregate_regions(per_electrode: typing.Mapping[str, ElectrodeScore], layout: ElectrodeLayout) -> RegionReport:
    '''Sums electrode tallies per hemisphere x region and computes the asymmetry indices'''
    unknown = sorted(e for e in per_electrode if e not in layout)
    if unknown:
        exc = ConfigurationError(f'Electrode(s) not in the layout: {", ".join(unknown)}', 'layout')
        exc.add_note(f'The layout has {len(layout)} electrode(s)')
        raise exc
    counts = Counter()
    weights = {(h, r): [] for h in HEMISPHERES for r in REGIONS}
    for label,score in per_electrode.items():
        el = layout[label]
        counts[el.hemisphere, el.region] += score.count
        weights[el.hemisphere, el.region].append(score.weight_sum)
    per_region = MappingProxyType({k: ElectrodeScore(counts[k], math.fsum(w)) for k,w in weights.items()})
    left, right = _hemisphere_score(per_region, 'left'), _hemisphere_score(per_region, 'right')
    report = RegionReport(per_electrode=MappingProxyType(dict(per_electrode)), per_region=per_region,
                          asymmetry=asymmetry_index(left.count, right.count),
                          weight_asymmetry=asymmetry_index(left.weight_sum, right.weight_sum))
    logger.verbose(f'{report.total_count} selected feature(s): {left.count} left, {right.count} right, '
                   f'asymmetry index {report.asymmetry:+.3f}')
    return report

def render_region_report(report: RegionReport, *, title: str = 'Region report') -> str:
    '''Renders the per-electrode and per-region tables and the asymmetry indices as text'''
    lines = [title, '', f'{"electrode":<10}{"count":>7}{"weight":>12}']
    ranked = sorted(report.per_electrode.items(), key=lambda kv: (-kv[1].count, -kv[1].weight_sum, kv[0]))
    lines.extend(f'{e:<10}{s.count:>7}{s.weight_sum:>12.4f}' for e,s in ranked if s.count)
    if not report.selected(): lines.append('(no electrode selected)')
    lines.extend(('', f'{"hemisphere":<12}{"region":<11}{"count":>7}{"weight":>12}'))
    for (h, r),s in report.per_region.items():
        lines.append(f'{h:<12}{r:<11}{s.count:>7}{s.weight_sum:>12.4f}')
    lines.extend(('', f'Asymmetry index (counts): {report.asymmetry:+.3f}',
                  f'Asymmetry index (weights): {report.weight_asymmetry:+.3f}'))
    return '\n'.join(lines)

class RosterEntry(typing.NamedTuple):
    name: str
    count: int
    part: str | None

def feature_roster(selected: typing.Sequence[int], layout_of_vector: Layout,
                   registry: typing.Sequence['FeatureDescriptor'] | None = None) -> list[RosterEntry]:
    '''
        How often each feature (by name, over all electrodes) was selected, most selected first
            Source parts come from `registry` when given; ties keep first-appearance order
    '''
    idxs = _check_indices(selected, len(layout_of_vector))
    parts = {} if registry is None else {d.name: d.part for d in registry}
    counts = Counter(layout_of_vector[i][1] for i in idxs)
    order = list(dict.fromkeys(f for _,f in layout_of_vector))
    ranked = sorted((f for f in order if counts[f]), key=lambda f: (-counts[f], order.index(f)))
    return [RosterEntry(f, counts[f], parts.get(f, None)) for f in ranked]
def render_roster(entries: typing.Sequence[RosterEntry], *, title: str = 'Most selected features') -> str:
    lines = [title, '', f'{"feature":<14}{"part":<6}{"count":>7}']
    lines.extend(f'{e.name:<14}{e.part or "-":<6}{e.count:>7}' for e in entries)
    if not entries: lines.append('(no feature selected)')
    return '\n'.join(lines)
