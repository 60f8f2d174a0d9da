"""Zero-forcing processes and their contingent / leaky variants.

A colored vertex with exactly one uncolored neighbor colors it.  A set is
forcing if iterating this rule colors everything; it is (n-k)-contingent
if it stays forcing after deleting any k edges, and l-leaky if it stays
forcing after hanging a pendant on any l vertices.  Edge weights play no
role here; :class:`~combench.graphs.WeightedGraph` is accepted for API
uniformity only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import InstanceTooLarge, NotATree, ValidationError
from .graphs import WeightedGraph


@dataclass(frozen=True)
class ForcingState:
    graph: WeightedGraph
    colored: frozenset[int]
    history: tuple[tuple[int, int], ...]  # (forcer, forced), in applied order

    @property
    def all_colored(self) -> bool:
        return len(self.colored) == self.graph.n


def _closure_mask(masks: list[int], colored: int, n: int) -> int:
    """Fixpoint of the forcing rule on adjacency bitmasks (no history)."""
    full = (1 << n) - 1
    changed = True
    while changed and colored != full:
        changed = False
        remaining = colored
        while remaining:
            s = (remaining & -remaining).bit_length() - 1
            remaining &= remaining - 1
            unc = masks[s] & ~colored
            if unc and unc & (unc - 1) == 0:  # exactly one uncolored neighbor
                colored |= unc
                changed = True
        # restart the scan whenever a move fired; order cannot change the result
    return colored


def force_closure(g: WeightedGraph, Z, order_seed: int | None = None) -> ForcingState:
    """Apply forcing moves until none remain, recording one maximal sequence.

    The final colored set is order-independent (the process is confluent);
    ``order_seed`` shuffles which legal move fires first so tests can check
    exactly that.  Default order: lowest-index forcer first.
    """
    Z = frozenset(Z)
    if any(not 0 <= v < g.n for v in Z):
        raise ValidationError("forcing set outside vertex range", Z=sorted(Z))
    masks = g.neighbor_masks()
    rng = random.Random(order_seed) if order_seed is not None else None
    colored = set(Z)
    history: list[tuple[int, int]] = []
    while True:
        moves = []
        cmask = 0
        for v in colored:
            cmask |= 1 << v
        for s in colored:
            unc = masks[s] & ~cmask
            if unc and unc & (unc - 1) == 0:
                moves.append((s, unc.bit_length() - 1))
        if not moves:
            break
        moves.sort()
        s, v = rng.choice(moves) if rng is not None else moves[0]
        colored.add(v)
        history.append((s, v))
    return ForcingState(g, frozenset(colored), tuple(history))


def is_zero_forcing(g: WeightedGraph, Z) -> bool:
    masks = g.neighbor_masks()
    start = 0
    for v in Z:
        start |= 1 << v
    return _closure_mask(masks, start, g.n) == (1 << g.n) - 1


def is_contingent_zfs(g: WeightedGraph, Z, k: int) -> bool:
    """True iff Z forces every graph obtained by deleting at most k edges.

    k = 0 is ordinary zero-forcing.  Enumerates edge subsets directly;
    for small k this is cheap and doubles as the oracle for the leaky
    equivalence.
    """
    if k < 0:
        raise ValidationError("k must be nonnegative", k=k)
    Zmask = 0
    for v in Z:
        if not 0 <= v < g.n:
            raise ValidationError("forcing set outside vertex range", vertex=v)
        Zmask |= 1 << v
    full = (1 << g.n) - 1
    edge_pairs = [(u, v) for u, v, _ in g.edges]
    base = g.neighbor_masks()
    for r in range(min(k, len(edge_pairs)) + 1):
        for removed in combinations(range(len(edge_pairs)), r):
            masks = base[:]
            for idx in removed:
                u, v = edge_pairs[idx]
                masks[u] &= ~(1 << v)
                masks[v] &= ~(1 << u)
            if _closure_mask(masks, Zmask, g.n) != full:
                return False
    return True


def is_leaky_zfs(g: WeightedGraph, Z, leaks: int) -> bool:
    """True iff Z forces every pendant-augmented graph with at most ``leaks`` leaks.

    A leak at v attaches a fresh pendant neighbor to v; the forcing set must
    color the augmented graph completely, pendants included.
    """
    if leaks < 0:
        raise ValidationError("leak count must be nonnegative", leaks=leaks)
    Zmask = 0
    for v in Z:
        if not 0 <= v < g.n:
            raise ValidationError("forcing set outside vertex range", vertex=v)
        Zmask |= 1 << v
    base = g.neighbor_masks()
    for r in range(min(leaks, g.n) + 1):
        for L in combinations(range(g.n), r):
            n2 = g.n + r
            masks = base[:] + [0] * r
            for i, v in enumerate(L):
                p = g.n + i
                masks[v] |= 1 << p
                masks[p] |= 1 << v
            if _closure_mask(masks, Zmask, n2) != (1 << n2) - 1:
                return False
    return True


def min_contingent_zfs(g: WeightedGraph, k: int, cap: int = 12) -> frozenset[int]:
    """Smallest (n-k)-contingent forcing set, exhaustively.

    Searches by cardinality then lexicographic vertex order, so the witness
    of minimality is deterministic.  ``cap`` bounds the brute force; larger
    graphs raise rather than silently truncating.
    """
    if g.n > cap:
        raise InstanceTooLarge("graph above brute-force cap", n=g.n, cap=cap)
    for size in range(g.n + 1):
        for Z in combinations(range(g.n), size):
            if is_contingent_zfs(g, Z, k):
                return frozenset(Z)
    raise ValidationError("no forcing set found", n=g.n)  # unreachable: Z = V works


def tree_contingent_set(tree: WeightedGraph, k: int) -> frozenset[int]:
    """The low-degree vertex set {v : deg(v) <= k} of a tree.

    For k >= 1 this is exactly the minimum (n-k)-contingent forcing set of
    the tree.
    """
    if k < 1:
        raise ValidationError("tree characterization needs k >= 1", k=k)
    if not tree.is_connected() or tree.edge_count != max(tree.n - 1, 0):
        raise NotATree("input is not a tree", n=tree.n, edges=tree.edge_count)
    masks = tree.neighbor_masks()
    return frozenset(v for v in range(tree.n) if bin(masks[v]).count("1") <= k)
