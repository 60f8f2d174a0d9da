"""Exception hierarchy shared by all combench modules.

Every domain error derives from :class:`CombenchError` and carries an
optional context dict so the CLI can serialize failures as
``{"code": ..., "message": ..., "context": ...}``.
"""

from __future__ import annotations


class CombenchError(Exception):
    def __init__(self, message: str = "", **context):
        super().__init__(message)
        self.context = context

    @property
    def code(self) -> str:
        return type(self).__name__


# graph layer
class DisconnectedGraph(CombenchError):
    """A finite metric was required but the graph is disconnected."""


class LandmarkOutOfRange(CombenchError):
    """Landmark set is empty or references vertices outside the graph."""


class InvalidSpec(CombenchError):
    """Graph generator spec is malformed or has out-of-range parameters."""


# filtered complexes / diagrams
class InfiniteDistance(CombenchError):
    """A complex construction hit an infinite geodesic distance."""


class EmptyLandmarks(CombenchError):
    pass


class EmptyWitnesses(CombenchError):
    pass


class InvalidFiltration(CombenchError):
    """A face is missing or ordered after one of its cofaces."""


class EssentialMismatch(CombenchError):
    """Diagrams disagree on the number of essential classes in a dimension."""


# shared by brute-force solvers
class InstanceTooLarge(CombenchError):
    """Instance exceeds the configured exhaustive-search cap."""


# hypergraph cuts
class TerminalViolation(CombenchError):
    """Bipartition does not separate the source from the sink."""


class WeightOutOfRange(CombenchError):
    """Split penalty outside the range the reduction supports."""


# dag elimination
class NotEliminatable(CombenchError):
    """Edge/vertex fails the structural precondition for elimination."""


class IllegalStep(CombenchError):
    """A step in an elimination sequence was illegal when reached."""


class MissingLabel(CombenchError):
    """Arc has no local partial value but a numeric result was requested."""


# reversal schedules
class MemoryExceeded(CombenchError):
    """Persistent-memory budget violated at a schedule step."""


class ValueNotLive(CombenchError):
    """Schedule step consumed a value that is not materialized."""


class IncompleteReversal(CombenchError):
    """Schedule ended without adjoining every non-input vertex."""


class Infeasible(CombenchError):
    """No schedule exists within the given memory budget."""


# delayed iteration operators
class KappaTooSmall(CombenchError):
    """History depth smaller than the maximum delay."""


class BadPartition(CombenchError):
    """Block partition or delay matrix shape is inconsistent."""


class SingularDiagonalBlock(CombenchError):
    pass


class NormalizationDegenerate(CombenchError):
    """Spectral radius is zero, so unit rescaling is impossible."""


class NoConvergence(CombenchError):
    """Iterative spectral-radius estimate failed to meet tolerance."""


# binary matrices
class ShapeMismatch(CombenchError):
    pass


# forcing
class NotATree(CombenchError):
    pass


# CLI / IO
class ParseError(CombenchError):
    """Input file failed to parse against its schema."""


class ValidationError(CombenchError):
    """Parsed input violates a documented invariant or precondition."""
