"""
Rotmerge - Rotation Merging for Clifford+RZ Circuits

Reduces the T-count of quantum circuits by merging Pauli rotations that share
an axis, using a Clifford tableau and the rank profile of the rotations'
commutativity matrix to skip redundant commutation checks.
"""

__version__ = "1.0.0"
__author__ = "Rotmerge Team"
__description__ = "Rotation merging for Clifford+RZ circuits"

from .angle import Angle, parse_angle
from .circuit import Circuit, CircuitStats, Gate
from .errors import (
    CircuitParseError,
    InvariantError,
    RotmergeError,
    UnsupportedGateError,
    UsageError,
)
from .formats import load_circuit, parse_qasm, parse_qc, save_circuit, write_qasm, write_qc
from .merge import METHODS, MergeOutcome, RotationMerger, bbmerge, fast_tmerge, tmerge
from .pauli import PauliProduct
from .rotations import (
    RotationSequence,
    commutativity_matrix,
    extended_commutativity_matrix,
    extract,
    rank_vector,
)
from .tableau import CliffordTableau
from .verify import EquivalenceChecker, equivalent_up_to_phase

__all__ = [
    'Angle',
    'parse_angle',
    'Circuit',
    'CircuitStats',
    'Gate',
    'CircuitParseError',
    'InvariantError',
    'RotmergeError',
    'UnsupportedGateError',
    'UsageError',
    'load_circuit',
    'parse_qasm',
    'parse_qc',
    'save_circuit',
    'write_qasm',
    'write_qc',
    'METHODS',
    'MergeOutcome',
    'RotationMerger',
    'bbmerge',
    'fast_tmerge',
    'tmerge',
    'PauliProduct',
    'RotationSequence',
    'commutativity_matrix',
    'extended_commutativity_matrix',
    'extract',
    'rank_vector',
    'CliffordTableau',
    'EquivalenceChecker',
    'equivalent_up_to_phase',
    '__version__',
    '__author__',
    '__description__'
]
