'''
imports of all (required) sub-modules
'''

from . import common

from . import cyclo
from . import model
from . import parser
from . import density

from . import measurement
from . import clique
from . import protocols
from . import families

from . import certify
from . import channels

from . import stateio
from . import report
from . import render
from . import cli
