"""Halfspace separation via 2-SAT.

For a disjoint, osculating, shadow-closed pair (A, B) every separating
halfspace has the form A + (a subset of the residue R), and the valid
subsets are exactly the models of a 2-SAT formula with one variable per
residue vertex.  Two formulations are built here:

- the refined formula (``build_formula``): anchor equalities tying every
  residue vertex to boundary vertices, difference clauses on nonadjacent
  boundary pairs, and directed implications between boundary vertices
  witnessed by an outside neighbor reachable through the residue;
- the direct formula (``build_formula_direct``): difference clauses plus
  one implication for every hull containment between residue vertices.
  It has the same model set and exists for cross-validation.

``halfspace_separation`` walks a shortest A-B path, closes each consecutive
edge into the pair, and returns the halfspace decoded from the first
satisfiable formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyInput, InvalidPair
from .graphs import Graph, VertexSet, _bfs_mask, _shortest_path_mask, bits
from .mconv import ClosedPair, _derive_closed_pair, pair_hull, shadow_closure
from .samples import Sample
from .twosat import Assignment, TwoSatInstance, solve


@dataclass(frozen=True)
class Halfspace:
    """An m-convex set whose complement is also m-convex."""

    members: VertexSet

    def __contains__(self, v: int) -> bool:
        return v in self.members

    @property
    def mask(self) -> int:
        return self.members.mask

    def complement(self) -> "Halfspace":
        return Halfspace(self.members.complement())


@dataclass
class ResidueFormula:
    """A 2-SAT encoding of the separating halfspaces of a closed pair.

    var_of maps residue vertices to variable indices (ascending vertex
    order); anchors[x] is the set of boundary vertices forced equal to x;
    arcs_a / arcs_b list the directed implication witnesses toward the A
    and B side.
    """

    pair: ClosedPair
    inst: TwoSatInstance
    var_of: dict[int, int]
    r_vertices: list[int]
    anchors: dict[int, VertexSet]
    arcs_a: list[tuple[int, int]]
    arcs_b: list[tuple[int, int]]

    def decode(self, assignment: Assignment) -> VertexSet:
        """Halfspace members induced by a model: A plus the true residue."""
        mask = self.pair.A.mask
        for x, var in self.var_of.items():
            if assignment[var] == 1:
                mask |= 1 << x
        n = self.pair.A.n
        return VertexSet(n, mask)


def _validate_pair(pair: ClosedPair):
    if pair.A.mask & pair.B.mask:
        raise InvalidPair("pair sides intersect")
    if not pair.A or not pair.B:
        raise InvalidPair("pair sides must be nonempty")
    if not pair.osculating:
        raise InvalidPair("pair is not osculating")


class _ClauseBuilder:
    """Deduplicating clause collector with deterministic order."""

    def __init__(self, var_count: int):
        self.inst = TwoSatInstance(var_count)
        self._seen = set()

    def add(self, l1, l2, tag):
        key = (min(l1, l2), max(l1, l2))
        if key in self._seen:
            return
        self._seen.add(key)
        self.inst.add_clause(l1, l2, tag)

    def equal(self, x, y):
        self.add((x, False), (y, True), "equality")
        self.add((x, True), (y, False), "equality")

    def differ(self, x, y):
        self.add((x, True), (y, True), "difference")
        self.add((x, False), (y, False), "difference")

    def implies_a(self, x, y):
        self.add((x, False), (y, True), "implicationA")

    def implies_b(self, x, y):
        self.add((x, True), (y, False), "implicationB")


def _adjacent_cross_pairs(g: Graph, pair: ClosedPair) -> list[tuple[int, int]]:
    out = []
    for a in bits(pair.bd_ab.mask):
        for b in bits(g.adj[a] & pair.bd_ba.mask):
            out.append((a, b))
    return out


def build_formula(g: Graph, pair: ClosedPair) -> ResidueFormula:
    """Refined residue formula for a disjoint osculating closed pair."""
    _validate_pair(pair)
    rmask = pair.R.mask
    boundary = pair.boundary_r.mask
    r_vertices = list(bits(rmask))
    var_of = {x: i for i, x in enumerate(r_vertices)}
    builder = _ClauseBuilder(len(r_vertices))
    cross = _adjacent_cross_pairs(g, pair)

    # anchor equalities: boundary vertices lying in both hulls toward an
    # adjacent outside pair must take the same side as x
    anchors: dict[int, VertexSet] = {}
    for x in r_vertices:
        amask = 0
        for a, b in cross:
            amask |= pair_hull(g, x, a) & pair_hull(g, x, b)
        amask &= boundary
        if not amask:
            raise InvalidPair(
                f"residue vertex {x} has no boundary anchor; pair is not a "
                "genuine shadow-closure fixpoint"
            )
        anchors[x] = VertexSet(g.n, amask)
        for x0 in bits(amask):
            builder.equal(var_of[x], var_of[x0])

    # difference clauses on nonadjacent boundary pairs
    b_list = list(bits(boundary))
    for i, x in enumerate(b_list):
        for y in b_list[i + 1 :]:
            if not g.has_edge(x, y):
                builder.differ(var_of[x], var_of[y])

    # implications between boundary vertices, witnessed by an outside
    # neighbor of y not adjacent to x that leaves x reachable from y
    # through the residue
    arcs_a: list[tuple[int, int]] = []
    arcs_b: list[tuple[int, int]] = []
    for x in b_list:
        for y in b_list:
            if x == y:
                continue
            if _implies(g, rmask, pair.A.mask, x, y):
                arcs_a.append((x, y))
                builder.implies_a(var_of[x], var_of[y])
            if _implies(g, rmask, pair.B.mask, x, y):
                arcs_b.append((x, y))
                builder.implies_b(var_of[x], var_of[y])

    return ResidueFormula(
        pair=pair,
        inst=builder.inst,
        var_of=var_of,
        r_vertices=r_vertices,
        anchors=anchors,
        arcs_a=arcs_a,
        arcs_b=arcs_b,
    )


def _implies(g: Graph, rmask: int, side_mask: int, x: int, y: int) -> bool:
    """True when some z in the side is adjacent to y, not adjacent to x,
    and x stays connected to y inside (R minus N(z)) + {y}."""
    adj = g.adj
    xbit = 1 << x
    for z in bits(side_mask):
        if not (adj[z] >> y) & 1 or (adj[z] >> x) & 1:
            continue
        allowed = (rmask & ~adj[z]) | (1 << y)
        if _bfs_mask(g, xbit, allowed) & (1 << y):
            return True
    return False


def build_formula_direct(g: Graph, pair: ClosedPair) -> ResidueFormula:
    """Direct residue formula: differences plus hull-containment
    implications; same model set as the refined formula."""
    _validate_pair(pair)
    rmask = pair.R.mask
    boundary = pair.boundary_r.mask
    r_vertices = list(bits(rmask))
    var_of = {x: i for i, x in enumerate(r_vertices)}
    builder = _ClauseBuilder(len(r_vertices))

    b_list = list(bits(boundary))
    for i, x in enumerate(b_list):
        for y in b_list[i + 1 :]:
            if not g.has_edge(x, y):
                builder.differ(var_of[x], var_of[y])

    for x in r_vertices:
        for z in bits(pair.A.mask):
            for y in bits(pair_hull(g, x, z) & rmask & ~(1 << x)):
                builder.implies_a(var_of[x], var_of[y])
        for z in bits(pair.B.mask):
            for y in bits(pair_hull(g, x, z) & rmask & ~(1 << x)):
                builder.implies_b(var_of[x], var_of[y])

    return ResidueFormula(
        pair=pair,
        inst=builder.inst,
        var_of=var_of,
        r_vertices=r_vertices,
        anchors={},
        arcs_a=[],
        arcs_b=[],
    )


def halfspace_separation(g: Graph, A: VertexSet, B: VertexSet) -> Halfspace | None:
    """A halfspace containing A and avoiding B, or None when none exists.

    Trivial inputs resolve directly (empty B gives V, empty A gives the
    empty set, intersecting inputs give None).  Otherwise each consecutive
    edge of a shortest A-B path is closed into the pair and the first
    satisfiable residue formula decides the answer; the per-edge closed set
    replaces the raw input side so the output partitions V.
    """
    if not B:
        return Halfspace(g.full_set())
    if not A:
        return Halfspace(g.empty_set())
    if A.mask & B.mask:
        return None
    path = _shortest_path_mask(g, A.mask, B.mask, (1 << g.n) - 1)
    for u, v in zip(path, path[1:]):
        astar, bstar = shadow_closure(g, A.add(u), B.add(v))
        if astar.mask & bstar.mask:
            continue
        pair = _derive_closed_pair(g, astar.mask, bstar.mask)
        formula = build_formula(g, pair)
        assignment = solve(formula.inst)
        if assignment is not None:
            return Halfspace(formula.decode(assignment))
    return None


def is_realizable(g: Graph, sample: Sample) -> Halfspace | None:
    """A halfspace consistent with the sample, or None."""
    return halfspace_separation(g, sample.pos, sample.neg)
