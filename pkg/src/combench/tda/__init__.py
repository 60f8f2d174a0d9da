"""Filtered complexes on metric graphs and their persistent homology."""

from .complexes import (
    FilteredComplex,
    dowker_complex,
    genus,
    vietoris_rips,
    witness_complex,
)
from .persistence import PersistenceDiagram, persistence
from .bottleneck import bottleneck_distance

__all__ = [
    "FilteredComplex",
    "PersistenceDiagram",
    "bottleneck_distance",
    "dowker_complex",
    "genus",
    "persistence",
    "vietoris_rips",
    "witness_complex",
]
