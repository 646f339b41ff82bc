"""Verification and exhaustive search for P-intersecting families of graphs."""

from .errors import CapacityError, CoverError, InvalidArgument, ParseError
from .graphs import (
    DirectedGraph,
    Kind,
    OrientedGraph,
    PropertySpec,
    SimpleGraph,
    component_count,
    contains_full_out_cut,
    edge_slot,
    has_cutvertex,
    has_hamilton_cycle,
    has_hamilton_path,
    intersect,
    is_connected,
    is_strongly_connected,
    is_two_edge_connected,
    satisfies,
    slot_edge,
)
from .constructions import Family, verify_family

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CoverError",
    "DirectedGraph",
    "Family",
    "InvalidArgument",
    "Kind",
    "OrientedGraph",
    "ParseError",
    "PropertySpec",
    "SimpleGraph",
    "component_count",
    "contains_full_out_cut",
    "edge_slot",
    "has_cutvertex",
    "has_hamilton_cycle",
    "has_hamilton_path",
    "intersect",
    "is_connected",
    "is_strongly_connected",
    "is_two_edge_connected",
    "satisfies",
    "slot_edge",
    "verify_family",
]
