"""Simulation of LOCC cloning of CAT and GHZ states.

Submodules: ``tensorlab`` (dense kernels), ``qstate`` (states, negativity),
``catstates`` (labels, pair classification), ``locc`` (protocols),
``witness`` (negativity witnesses and curves), ``cli``.
"""

from .catstates import CatLabel, cat_state, classify_pair, ghz_state, max_clonable_set, validate_set
from .locc import theorem4_protocol, theorem5_protocol, verify_cloning
from .qstate import Bipartition, DensityOperator, PureState, negativity
from .witness import closed_form, sweep, threshold_alpha, witness_pair, witness_set

__version__ = "0.1.0"
