"""
signedflow - exact circular flows, orientations and duality for signed graphs
"""

__version__ = "0.1.0"

from .budget import Outcome, SearchBudget
from .exceptions import (
    BudgetExhausted,
    ConfigurationError,
    ContractViolation,
    GraphMismatchError,
    GuardError,
    ParseError,
    SignedFlowError,
    ValidationError,
)
from .flows import FlowAssignment, FlowKind, verify_flow
from .graph import NEGATIVE, POSITIVE, Edge, Orientation, SignedGraph
from .orientations import find_mod_orientation, orientation_to_partition
from .planar import PlaneEmbedding, check_duality, dual
from .solver import circular_chromatic_number, circular_flow_index, decide_pq_flow

__all__ = [
    "SignedGraph",
    "Edge",
    "Orientation",
    "POSITIVE",
    "NEGATIVE",
    "FlowKind",
    "FlowAssignment",
    "verify_flow",
    "decide_pq_flow",
    "circular_flow_index",
    "circular_chromatic_number",
    "find_mod_orientation",
    "orientation_to_partition",
    "PlaneEmbedding",
    "dual",
    "check_duality",
    "Outcome",
    "SearchBudget",
    "SignedFlowError",
    "ConfigurationError",
    "ValidationError",
    "ParseError",
    "GraphMismatchError",
    "BudgetExhausted",
    "GuardError",
    "ContractViolation",
]
