#!/bin/python3

'''Allows running ERPScope's command-line interface via `python -m erpscope`'''

#> Imports
import sys

from .cli.main import main
#</Imports

#> Main >/
sys.exit(main())
