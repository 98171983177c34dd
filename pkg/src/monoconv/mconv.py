"""Monophonic convexity primitives: convexity test, hulls, shadows, shadow
closure, closed pairs, imprints, and greedy hull sets.

The hull algorithm iterates the component criterion: a set S is m-convex
iff, for every connected component B of G[V \\ S], the vertices of S with a
neighbor in B form a clique.  While some component exposes a nonadjacent
attachment pair x, y we add the interior of a shortest x-y path inside
G[B + {x, y}].  A shortest path in an induced subgraph is chordless there,
and chordlessness in an induced subgraph carries over to G, so every added
vertex lies on an induced x-y path and hence in the hull; at the fixpoint
the criterion holds, so the result is exactly the smallest m-convex
superset.  Oracle-equivalence tests enforce this on every corpus graph.

Pairwise hulls are the reusable unit (hulls of arbitrary sets are unions of
pairwise hulls), so hull results are memoized per graph.  The memo is
insert-only and entries always equal recomputation, so concurrent use is
safe under the module contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadInput, EmptyInput, NotFixpoint
from .graphs import (
    Graph,
    VertexSet,
    _bfs_mask,
    _is_clique_mask,
    _shortest_path_mask,
    bits,
    component_masks,
)


def is_mconvex(g: Graph, s: VertexSet) -> bool:
    """Component criterion: every complement component attaches to a clique."""
    return _is_mconvex_mask(g, s.mask)


def _is_mconvex_mask(g: Graph, smask: int) -> bool:
    full = (1 << g.n) - 1
    adj = g.adj
    for comp in component_masks(g, full & ~smask):
        reach = 0
        for b in bits(comp):
            reach |= adj[b]
        if not _is_clique_mask(g, reach & smask):
            return False
    return True


def _hull_mask(g: Graph, smask: int) -> int:
    memo = g._hull_memo
    cached = memo.get(smask)
    if cached is not None:
        return cached
    full = (1 << g.n) - 1
    adj = g.adj
    cur = smask
    while True:
        added = 0
        for comp in component_masks(g, full & ~cur):
            reach = 0
            for b in bits(comp):
                reach |= adj[b]
            attach = reach & cur
            for x in bits(attach):
                # nonadjacent attachment partners y > x
                others = attach & ~adj[x] & ~((1 << (x + 1)) - 1)
                for y in bits(others):
                    path = _shortest_path_mask(
                        g, 1 << x, 1 << y, comp | (1 << x) | (1 << y)
                    )
                    # x and y both neighbor the connected component, so a
                    # path through it always exists
                    for w in path[1:-1]:
                        added |= 1 << w
        if not added:
            break
        cur |= added
    memo[smask] = cur
    return cur


def mhull(g: Graph, s: VertexSet) -> VertexSet:
    """Smallest m-convex superset of ``s``."""
    return VertexSet(g.n, _hull_mask(g, s.mask))


def pair_hull(g: Graph, u: int, v: int) -> int:
    """Memoized hull mask of the pair {u, v}."""
    return _hull_mask(g, (1 << u) | (1 << v))


def _shadow_mask(g: Graph, amask: int, bmask: int) -> int:
    """Mask of {x : hull(B + {x}) meets A}.

    Uses the pairwise-hull reduction hull(B + {x}) = hull(B) plus the union
    of hull(u, x) over u in hull(B).
    """
    full = (1 << g.n) - 1
    hb = _hull_mask(g, bmask)
    if hb & amask:
        return full
    out = 0
    for x in range(g.n):
        xb = 1 << x
        if xb & amask:
            out |= xb
            continue
        if xb & hb:
            continue
        for u in bits(hb):
            if _hull_mask(g, xb | (1 << u)) & amask:
                out |= xb
                break
    return out


def shadow(g: Graph, a_set: VertexSet, b_set: VertexSet) -> VertexSet:
    """The shadow A/B: vertices whose addition to B pulls the hull into A."""
    if not a_set or not b_set:
        raise EmptyInput("shadow requires nonempty sets")
    return VertexSet(g.n, _shadow_mask(g, a_set.mask, b_set.mask))


def shadow_closure(
    g: Graph, a_set: VertexSet, b_set: VertexSet
) -> tuple[VertexSet, VertexSet]:
    """Fixpoint of A <- hull(A/B), B <- hull(B/A), updated simultaneously.

    Both sequences are monotone, so at most n rounds are needed.  The result
    may intersect, which signals that no halfspace separates the inputs.
    """
    if not a_set or not b_set:
        raise EmptyInput("shadow closure requires nonempty sets")
    a, b = a_set.mask, b_set.mask
    while True:
        na = _hull_mask(g, _shadow_mask(g, a, b))
        nb = _hull_mask(g, _shadow_mask(g, b, a))
        if na == a and nb == b:
            return VertexSet(g.n, a), VertexSet(g.n, b)
        a, b = na, nb


@dataclass(frozen=True)
class ClosedPair:
    """A shadow-closed pair (A, B) with its derived residue structure.

    R is V minus (A + B); boundary_r the residue vertices with a neighbor
    outside R; bd_ab the A-vertices adjacent to B and bd_ba the B-vertices
    adjacent to A.  The pair osculates iff bd_ab (equivalently bd_ba) is
    nonempty.
    """

    A: VertexSet
    B: VertexSet
    R: VertexSet
    boundary_r: VertexSet
    bd_ab: VertexSet
    bd_ba: VertexSet

    @property
    def osculating(self) -> bool:
        return bool(self.bd_ab)


def make_closed_pair(g: Graph, A: VertexSet, B: VertexSet) -> ClosedPair | None:
    """Package a shadow-closure fixpoint; None signals an inseparable pair.

    Raises NotFixpoint when one closure step moves the inputs.
    """
    if A.mask & B.mask:
        return None
    na = _hull_mask(g, _shadow_mask(g, A.mask, B.mask))
    nb = _hull_mask(g, _shadow_mask(g, B.mask, A.mask))
    if na != A.mask or nb != B.mask:
        raise NotFixpoint("pair is not shadow-closed")
    return _derive_closed_pair(g, A.mask, B.mask)


def _derive_closed_pair(g: Graph, amask: int, bmask: int) -> ClosedPair:
    n = g.n
    full = (1 << n) - 1
    adj = g.adj
    rmask = full & ~(amask | bmask)
    boundary = 0
    for x in bits(rmask):
        if adj[x] & ~rmask:
            boundary |= 1 << x
    bd_ab = 0
    for a in bits(amask):
        if adj[a] & bmask:
            bd_ab |= 1 << a
    bd_ba = 0
    for b in bits(bmask):
        if adj[b] & amask:
            bd_ba |= 1 << b
    return ClosedPair(
        A=VertexSet(n, amask),
        B=VertexSet(n, bmask),
        R=VertexSet(n, rmask),
        boundary_r=VertexSet(n, boundary),
        bd_ab=VertexSet(n, bd_ab),
        bd_ba=VertexSet(n, bd_ba),
    )


def imprints(
    g: Graph, A: VertexSet, B: VertexSet
) -> tuple[VertexSet, VertexSet]:
    """Mutual imprint sets of two disjoint m-convex sets.

    a belongs to the first output iff some path reaches B from a while
    meeting A only at a and B only at its own endpoint; equivalently the
    part of the residue reachable from a has a neighbor in B.  Both outputs
    are nonempty cliques for valid inputs.
    """
    if not A or not B:
        raise BadInput("imprints require nonempty sets")
    if A.mask & B.mask:
        raise BadInput("imprints require disjoint sets")
    full = (1 << g.n) - 1
    rmask = full & ~(A.mask | B.mask)
    adj = g.adj

    def side(first_mask: int, other_mask: int) -> int:
        out = 0
        for a in bits(first_mask):
            reach = _bfs_mask(g, 1 << a, rmask | (1 << a))
            frontier = 0
            for x in bits(reach):
                frontier |= adj[x]
            if frontier & other_mask:
                out |= 1 << a
        return out

    return (
        VertexSet(g.n, side(A.mask, B.mask)),
        VertexSet(g.n, side(B.mask, A.mask)),
    )


def hull_set_greedy(g: Graph) -> VertexSet:
    """Inclusion-minimal hull set by single-vertex removal in descending
    index order.

    Not necessarily minimum; downstream query bounds are reported against
    the size actually used.
    """
    full = (1 << g.n) - 1
    cur = full
    for v in range(g.n - 1, -1, -1):
        trial = cur & ~(1 << v)
        if trial and _hull_mask(g, trial) == full:
            cur = trial
    return VertexSet(g.n, cur)
