#!/bin/python3

'''Scalp-map rendering of region reports'''

#> Imports
from pathlib import Path

import matplotlib
from matplotlib.patches import Circle, Polygon, Ellipse

from . import logger
from .layout import ElectrodeLayout
from .regions import RegionReport
from ..util.plotting import new_figure, save_svg
#</Imports

#> Header >/
__all__ = ('render_scalp_map',)

_MARKER_RADIUS = .045

def render_scalp_map(report: RegionReport, layout: ElectrodeLayout, path: Path, *,
                     title: str | None = None, labels: bool = True):
    '''
        Draws a top-down head with one marker per layout electrode as SVG
            Fill intensity is proportional to the electrode's selection count; selected electrodes
            are outlined in red and carry the SVG id `selected-<label>`, the others `electrode-<label>`
    '''
    fig = new_figure(5., 5.4)
    ax = fig.add_subplot()
    ax.set_aspect('equal')
    ax.set_axis_off()
    ax.set_xlim(-1.2, 1.2)
    ax.set_ylim(-1.15, 1.25)
    # head, nose, ears
    ax.add_patch(Circle((0., 0.), 1., fill=False, linewidth=1.2, edgecolor='0.2'))
    ax.add_patch(Polygon(((-.09, .995), (0., 1.12), (.09, .995)), closed=False, fill=False, linewidth=1.2, edgecolor='0.2'))
    for side in (-1, 1):
        ax.add_patch(Ellipse((side * 1.03, 0.), .08, .3, fill=False, linewidth=1.2, edgecolor='0.2'))
    cmap = matplotlib.colormaps['Reds']
    peak = max((s.count for s in report.per_electrode.values()), default=0)
    for el in layout:
        score = report.per_electrode.get(el.label, None)
        count = 0 if score is None else score.count
        if count:
            marker = Circle((el.x, el.y), _MARKER_RADIUS, facecolor=cmap(.15 + .85 * count / peak),
                            edgecolor='red', linewidth=1.6, zorder=3)
            marker.set_gid(f'selected-{el.label}')
        else:
            marker = Circle((el.x, el.y), _MARKER_RADIUS, facecolor='white', edgecolor='0.45', linewidth=.6, zorder=2)
            marker.set_gid(f'electrode-{el.label}')
        ax.add_patch(marker)
        if labels:
            ax.text(el.x, el.y - 1.6 * _MARKER_RADIUS, el.label, fontsize=4.5, ha='center', va='top', color='0.25')
    ax.set_title(title if title is not None else
                 f'Selected electrodes ({report.total_count} feature(s), asymmetry {report.asymmetry:+.2f})', fontsize=9)
    save_svg(fig, path)
    logger.verbose(f'Rendered scalp map of {len(report.selected())} selected electrode(s) to {path}')
