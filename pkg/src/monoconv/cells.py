"""Cell decomposition of the halfspaces across an edge.

For an edge (a, b), the halfspaces containing a and avoiding b are the
models of the residue formula of the shadow closure of ({a}, {b}).  After
folding forced variables back into the closed sides, the free variables
split into equivalence classes; the vertex sets of the two same-valued
groups of a class are twin cells.  Implications between cells form two
directed graphs; their union (with the B-side arcs reversed) is acyclic and
orders the cells.  The resulting structure always takes one of three shapes:

- antichain: no arcs; any conflict-free choice of one cell per twin pair
  yields a halfspace (p = 1);
- quasiorder: arcs but no nonempty twins; the cells split into totally
  ordered blocks, and a halfspace is a prefix of blocks plus any subset of
  the next block;
- single twin: arcs plus exactly one nonempty twin pair; the pair forms its
  own block before or after the block of the remaining cells, on the side
  determined by the order.

``reconstruct`` maps a block index and a selection inside it back to a
halfspace; ``enumerate_edge`` lists the whole family.  The block structure
also gives the VC dimension of the per-edge family as the largest block
size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicStar, StructureError
from .graphs import Edge, Graph, VertexSet, bits, clique_number
from .mconv import ClosedPair, _derive_closed_pair, mhull, shadow_closure
from .separation import Halfspace, build_formula
from .twosat import ImplicationAnalysis, equivalence_groups


@dataclass(frozen=True)
class CellDecomposition:
    """Unified decomposition of the halfspaces containing a and avoiding b.

    ``pairs[i]`` is a twin pair (first half, second half); the second half
    may be empty.  ``blocks`` partitions pair indices into the ordered
    blocks; every halfspace of the family is the union of Astar, the first
    halves of all pairs in blocks before some index, a per-pair choice of
    half inside that block, and the second halves of the rest.
    """

    edge: Edge
    Astar: VertexSet
    Bstar: VertexSet
    pairs: tuple[tuple[VertexSet, VertexSet], ...]
    blocks: tuple[tuple[int, ...], ...]
    case_tag: str

    @property
    def p(self) -> int:
        return len(self.blocks)

    def block_of(self, pair_index: int) -> int:
        for j, block in enumerate(self.blocks):
            if pair_index in block:
                return j
        raise IndexError(pair_index)


@dataclass(frozen=True)
class ArcGraphs:
    """Directed implication graphs on nonempty cells.

    ``arcs_a``/``arcs_b`` hold (cell index, cell index) arcs; ``star`` is
    arcs_a plus reversed arcs_b; ``reach[i]`` is the set of cell indices
    reachable from i in the star graph (excluding i), so cell j is below
    cell i exactly when j is in reach[i].
    """

    arcs_a: tuple[tuple[int, int], ...]
    arcs_b: tuple[tuple[int, int], ...]
    star: tuple[tuple[int, int], ...]
    reach: tuple[frozenset[int], ...]

    def below(self, j: int, i: int) -> bool:
        return j in self.reach[i]


def eliminate_trivial(g: Graph, pair: ClosedPair) -> ClosedPair | None:
    """Fold forced residue vertices into the closed sides until every
    variable is free; None when the family across the pair is empty.

    All variables forced to the A side are folded at once (likewise for B),
    then the pair is re-closed and re-checked; each fold is individually
    sound, so batching only saves rebuilds.
    """
    while True:
        if not pair.R:
            return pair
        formula = build_formula(g, pair)
        analysis = ImplicationAnalysis(formula.inst)
        if not analysis.satisfiable:
            return None
        to_a = 0
        to_b = 0
        for x, var in formula.var_of.items():
            forced = analysis.forced(var)
            if forced == 1:
                to_a |= 1 << x
            elif forced == 0:
                to_b |= 1 << x
        if not to_a and not to_b:
            return pair
        astar, bstar = shadow_closure(
            g,
            mhull(g, VertexSet(g.n, pair.A.mask | to_a)),
            mhull(g, VertexSet(g.n, pair.B.mask | to_b)),
        )
        if astar.mask & bstar.mask:
            return None
        pair = _derive_closed_pair(g, astar.mask, bstar.mask)


def compute_cells(
    g: Graph, pair: ClosedPair
) -> tuple[list[tuple[VertexSet, VertexSet]], dict[int, int]]:
    """Twin-pair cells of a fully reduced pair.

    Returns the list of (first half, second half) vertex-set pairs plus the
    residue-vertex -> variable map.  The first half is the group holding the
    smallest vertex.  An empty residue yields zero pairs.
    """
    if not pair.R:
        return [], {}
    formula = build_formula(g, pair)
    groups = equivalence_groups(formula.inst, list(range(len(formula.r_vertices))))
    by_vertex = formula.var_of
    var_vertex = {v: x for x, v in by_vertex.items()}
    pairs = []
    for g1, g2 in groups:
        set1 = VertexSet.from_iter(g.n, (var_vertex[v] for v in g1))
        set2 = VertexSet.from_iter(g.n, (var_vertex[v] for v in g2))
        if set2 and set2.smallest() < set1.smallest():
            set1, set2 = set2, set1
        pairs.append((set1, set2))
    # every nonempty cell meets the residue boundary
    for set1, set2 in pairs:
        for cell in (set1, set2):
            if cell and not (cell.mask & pair.boundary_r.mask):
                raise StructureError("nonempty cell misses the residue boundary")
    total = sum((1 if s1 else 0) + (1 if s2 else 0) for s1, s2 in pairs)
    if total > 2 * clique_number(g):
        raise StructureError("cell count exceeds twice the clique number")
    return pairs, by_vertex


def build_arcs(
    g: Graph, pair: ClosedPair, cells: list[VertexSet]
) -> ArcGraphs:
    """Implication arcs between nonempty cells of a reduced pair.

    With no forced variables left, an implication between boundary vertices
    can only join adjacent ones: x implies y toward A iff some vertex of A
    off the A-B boundary neighbors y but not x (symmetric toward B).  Arcs
    lift to cells through any witnessing boundary pair.  The combined graph
    must be acyclic.
    """
    adj = g.adj
    boundary = pair.boundary_r.mask
    interior_a = pair.A.mask & ~pair.bd_ab.mask
    interior_b = pair.B.mask & ~pair.bd_ba.mask
    cell_of = {}
    for i, cell in enumerate(cells):
        for x in cell:
            cell_of[x] = i

    def vertex_arc(side_interior: int, x: int, y: int) -> bool:
        cand = side_interior & adj[y] & ~adj[x]
        return bool(cand)

    arcs_a = set()
    arcs_b = set()
    b_list = [x for x in bits(boundary)]
    for x in b_list:
        for y in b_list:
            if x == y or not (adj[x] >> y) & 1:
                continue
            ci, cj = cell_of[x], cell_of[y]
            if ci == cj:
                continue
            if vertex_arc(interior_a, x, y):
                arcs_a.add((ci, cj))
            if vertex_arc(interior_b, x, y):
                arcs_b.add((ci, cj))

    star = sorted(arcs_a | {(j, i) for i, j in arcs_b})
    succ = {i: [] for i in range(len(cells))}
    for i, j in star:
        succ[i].append(j)
    reach: list[frozenset[int]] = []
    for i in range(len(cells)):
        seen = set()
        stack = list(succ[i])
        while stack:
            j = stack.pop()
            if j in seen:
                continue
            seen.add(j)
            stack.extend(succ[j])
        if i in seen:
            raise CyclicStar("combined cell arc graph has a cycle")
        reach.append(frozenset(seen))
    return ArcGraphs(
        arcs_a=tuple(sorted(arcs_a)),
        arcs_b=tuple(sorted(arcs_b)),
        star=tuple(star),
        reach=tuple(reach),
    )


def decompose(g: Graph, a: int, b: int) -> CellDecomposition | None:
    """Cell decomposition of the halfspaces containing a and avoiding b;
    None when that family is empty.  Requires ab to be an edge."""
    if not g.has_edge(a, b):
        raise ValueError(f"({a}, {b}) is not an edge")
    memo = g._dec_memo
    if (a, b) in memo:
        return memo[(a, b)]
    result = _decompose_uncached(g, a, b)
    memo[(a, b)] = result
    return result


def _decompose_uncached(g: Graph, a: int, b: int) -> CellDecomposition | None:
    astar, bstar = shadow_closure(g, g.vset([a]), g.vset([b]))
    if astar.mask & bstar.mask:
        return None
    pair = _derive_closed_pair(g, astar.mask, bstar.mask)
    pair = eliminate_trivial(g, pair)
    if pair is None:
        return None

    twin_pairs, _ = compute_cells(g, pair)
    if not twin_pairs:
        return CellDecomposition(
            edge=Edge(a, b),
            Astar=pair.A,
            Bstar=pair.B,
            pairs=(),
            blocks=((),),
            case_tag="antichain",
        )

    # flatten nonempty cells for the arc graphs
    cells: list[VertexSet] = []
    owner: list[tuple[int, int]] = []  # (pair index, half index)
    for pi, (s1, s2) in enumerate(twin_pairs):
        cells.append(s1)
        owner.append((pi, 0))
        if s2:
            cells.append(s2)
            owner.append((pi, 1))
    arcs = build_arcs(g, pair, cells)
    twins = [
        ci
        for ci, (pi, _) in enumerate(owner)
        if twin_pairs[pi][1]
    ]

    if not arcs.star:
        blocks = (tuple(range(len(twin_pairs))),)
        return CellDecomposition(
            edge=Edge(a, b),
            Astar=pair.A,
            Bstar=pair.B,
            pairs=tuple(twin_pairs),
            blocks=blocks,
            case_tag="antichain",
        )

    if not twins:
        # linear quasiorder: peel cells with no remaining successor
        remaining = set(range(len(cells)))
        block_cells: list[list[int]] = []
        while remaining:
            layer = sorted(
                i for i in remaining if not (arcs.reach[i] & remaining)
            )
            if not layer:
                raise CyclicStar("quasiorder peeling stalled on a cycle")
            block_cells.append(layer)
            remaining -= set(layer)
        blocks = tuple(
            tuple(owner[i][0] for i in layer) for layer in block_cells
        )
        return CellDecomposition(
            edge=Edge(a, b),
            Astar=pair.A,
            Bstar=pair.B,
            pairs=tuple(twin_pairs),
            blocks=blocks,
            case_tag="quasiorder",
        )

    # single nonempty twin pair alongside other cells
    if len(twins) != 2 or owner[twins[0]][0] != owner[twins[1]][0]:
        raise StructureError(
            "arc graph with more than one nonempty twin pair"
        )
    tp = owner[twins[0]][0]
    out_deg = {
        ci: len(arcs.reach[ci]) for ci in twins
    }
    in_deg = {
        ci: sum(1 for j in range(len(cells)) if ci in arcs.reach[j])
        for ci in twins
    }
    linked = [ci for ci in twins if arcs.reach[ci] or in_deg[ci]]
    if len(linked) != 1:
        raise StructureError("exactly one twin half must touch the order")
    w = linked[0]
    if out_deg[w] and in_deg[w]:
        raise StructureError("twin half comparable in both directions")
    rest = tuple(sorted(pi for pi, _ in owner if pi != tp))
    # orient the twin pair so its first half is the arc-incident cell
    s1, s2 = twin_pairs[tp]
    w_set = cells[w]
    if w_set != s1:
        s1, s2 = s2, s1
    new_pairs = list(twin_pairs)
    new_pairs[tp] = (s1, s2)
    if out_deg[w]:
        # arc-incident half sits above the rest: its block comes last
        blocks = (rest, (tp,))
    else:
        blocks = ((tp,), rest)
    return CellDecomposition(
        edge=Edge(a, b),
        Astar=pair.A,
        Bstar=pair.B,
        pairs=tuple(new_pairs),
        blocks=blocks,
        case_tag="single-twin",
    )


def reconstruct(
    dec: CellDecomposition, block_index: int, chosen
) -> Halfspace:
    """Halfspace from a block index (1-based) and the set of pair indices
    within that block whose first half goes to the positive side."""
    if not 1 <= block_index <= dec.p:
        raise IndexError(f"block index {block_index} out of range 1..{dec.p}")
    chosen = set(chosen)
    block = set(dec.blocks[block_index - 1])
    if not chosen <= block:
        raise ValueError("chosen pairs must lie in the selected block")
    mask = dec.Astar.mask
    for j, blk in enumerate(dec.blocks, start=1):
        for pi in blk:
            first, second = dec.pairs[pi]
            if j < block_index or (j == block_index and pi in chosen):
                mask |= first.mask
            else:
                mask |= second.mask
    return Halfspace(VertexSet(dec.Astar.n, mask))


def enumerate_edge(dec: CellDecomposition) -> set[Halfspace]:
    """All halfspaces of the per-edge family, deduplicated (a full selection
    in one block repeats the empty selection in the next)."""
    out = {}
    for j, blk in enumerate(dec.blocks, start=1):
        members = list(blk)
        for bitsel in range(1 << len(members)):
            chosen = {
                members[i] for i in range(len(members)) if (bitsel >> i) & 1
            }
            h = reconstruct(dec, j, chosen)
            out[h.mask] = h
    return set(out.values())


def d_ab(dec: CellDecomposition) -> int:
    """VC dimension of the per-edge family: the largest block size."""
    return max((len(b) for b in dec.blocks), default=0)


def vc_hat(g: Graph) -> int:
    """Max of d_ab over edges with a nonempty family.

    The per-edge value is orientation-symmetric, so one orientation per
    edge is decomposed.
    """
    best = 0
    for u, v in g.edges:
        dec = decompose(g, u, v)
        if dec is not None:
            best = max(best, d_ab(dec))
    return best


def enumerate_halfspaces(g: Graph) -> set[Halfspace]:
    """The whole halfspace family: trivial sets plus both orientations of
    every edge, globally deduplicated."""
    out = {0: Halfspace(g.empty_set()), (1 << g.n) - 1: Halfspace(g.full_set())}
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            dec = decompose(g, a, b)
            if dec is None:
                continue
            for h in enumerate_edge(dec):
                out[h.mask] = h
    return set(out.values())
