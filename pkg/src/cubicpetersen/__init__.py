"""Petersen-graph containment in cubic graphs: search, certificates, and
the structural checks around it."""

__version__ = "0.1.0"

from .certificates import SubdivisionWitness, check_witness, validate_witness
from .circuits import Circuit, girth, is_interesting
from .containment import UNKNOWN, contains_petersen, contains_subdivision, is_isomorphic
from .fixtures import fixture
from .graph import MultiGraph, parse_graph6, read_catalog

__all__ = [
    "Circuit",
    "MultiGraph",
    "SubdivisionWitness",
    "UNKNOWN",
    "check_witness",
    "contains_petersen",
    "contains_subdivision",
    "fixture",
    "girth",
    "is_interesting",
    "is_isomorphic",
    "parse_graph6",
    "read_catalog",
    "validate_witness",
]
