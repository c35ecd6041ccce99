#!/bin/python3

'''
    ERPScope's `roi`: maps selected features back onto electrodes and scalp regions,
        measures hemispheric asymmetry, and renders scalp maps
'''

#> Imports
from ..util.logger import root_logger
#</Imports

#> Package >/
__all__ = ('logger',
           'HEMISPHERES', 'REGIONS', 'DEFAULT_LAYOUT',
           'Electrode', 'ElectrodeLayout', 'load_layout', 'infer_hemisphere', 'infer_region',
           'ElectrodeScore', 'RegionReport', 'RosterEntry',
           'attribute_selection', 'aggregate_regions', 'asymmetry_index',
           'render_region_report', 'feature_roster', 'render_roster',
           'render_scalp_map')

logger = root_logger.getChild('ROI')

from .layout import HEMISPHERES, REGIONS, DEFAULT_LAYOUT, Electrode, ElectrodeLayout, load_layout, infer_hemisphere, infer_region
from .regions import (ElectrodeScore, RegionReport, RosterEntry,
                      attribute_selection, aggregate_regions, asymmetry_index,
                      render_region_report, feature_roster, render_roster)
from .scalp import render_scalp_map
