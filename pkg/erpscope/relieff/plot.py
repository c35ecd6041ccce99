#!/bin/python3

'''Weight-profile rendering'''

#> Imports
from pathlib import Path

import numpy as np

from . import logger
from .weights import WeightVector, select_top_k
from ..util.plotting import new_figure, save_svg
#</Imports

#> Header >/
__all__ = ('render_weight_profile',)

def render_weight_profile(w: WeightVector, path: Path, *, highlight: int | None = None, title: str | None = None):
    '''
        Plots each feature's weight against its (1-based) feature number as SVG
            The `highlight` best features are marked
    '''
    n = len(w)
    x = np.arange(1, n + 1)
    fig = new_figure(8., 3.5)
    ax = fig.add_subplot()
    ax.plot(x, w.weights, color='0.35', linewidth=.6)
    ax.axhline(0., color='0.6', linewidth=.5, linestyle='--')
    if highlight:
        top = select_top_k(w, min(highlight, n))
        ax.scatter(x[top], w.weights[top], s=8, color='tab:red', zorder=3, label=f'best {len(top)}')
        ax.legend(loc='upper right', frameon=False)
    ax.set_xlim(0, n + 1)
    ax.set_xlabel('Feature number')
    ax.set_ylabel('Weight')
    ax.set_title(title if title is not None else f'ReliefF weights ({n} features'
                 + ('' if w.k_neighbors is None else f', k={w.k_neighbors}') + ')')
    fig.tight_layout()
    save_svg(fig, path)
    logger.verbose(f'Rendered weight profile of {n} feature(s) to {path}')
