#!/bin/python3

'''Deterministic SVG rendering on top of matplotlib's object-oriented API'''

#> Imports
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from .errors import OutputError
#</Imports

#> Header >/
__all__ = ('SVG_RC', 'new_figure', 'save_svg')

# Fixed salt, text as paths, and no creation date: identical figures give identical bytes
SVG_RC = {'svg.hashsalt': 'erpscope', 'svg.fonttype': 'path', 'path.simplify': False}

def new_figure(width_in: float = 6., height_in: float = 4.) -> Figure:
    '''Creates a figure that is not registered with `pyplot` (so it is safe to render from any thread)'''
    return Figure(figsize=(width_in, height_in))
def save_svg(fig: Figure, path: Path):
    '''
        Writes `fig` to `path` as SVG
            Raises `OutputError` if `path` cannot be written
    '''
    try:
        with matplotlib.rc_context(SVG_RC):
            fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as e:
        exc = OutputError(f'Could not write {path}: {e}')
        exc.add_note(f'Path: {path}')
        raise exc from e
