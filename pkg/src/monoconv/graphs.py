"""Graph core: bitset vertex sets, validated immutable graphs, traversal
primitives, edge-list/JSON I/O, and seeded instance generators.

Vertex sets are plain int bitmasks under the hood; ``VertexSet`` is a thin
immutable wrapper so that set algebra stays exact and hashable.  All
operations are pure functions of their inputs and break ties by smallest
vertex index, so every downstream algorithm is reproducible byte for byte.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, NamedTuple

from .errors import EmptyTerminal, GenerationFailed, ParseError, ValidationError


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable set of vertex indices 0..n-1 backed by an int bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if mask < 0 or mask >> n:
            raise ValueError(f"mask has bits outside 0..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    @classmethod
    def from_iter(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & ~other.mask)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ~self.mask & ((1 << self.n) - 1))

    def __le__(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def add(self, v: int) -> "VertexSet":
        return VertexSet(self.n, self.mask | (1 << v))

    def remove(self, v: int) -> "VertexSet":
        return VertexSet(self.n, self.mask & ~(1 << v))

    def smallest(self) -> int:
        if not self.mask:
            raise ValueError("empty VertexSet has no smallest element")
        return (self.mask & -self.mask).bit_length() - 1

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"


class Edge(NamedTuple):
    """Ordered vertex pair; ``u != v`` and {u, v} must be a graph edge."""

    u: int
    v: int


class Graph:
    """Immutable simple undirected connected graph over indexed vertices.

    ``adj[v]`` is the neighbor bitmask of ``v``; ``names`` maps indices to
    the external vertex names from the input, in first-appearance order.
    Graphs are safely shareable across threads; the private caches attached
    lazily by other modules are insert-only memo tables whose entries always
    equal recomputation.
    """

    __slots__ = (
        "n",
        "m",
        "names",
        "adj",
        "edges",
        "_index",
        "_hull_memo",
        "_dec_memo",
        "__weakref__",
    )

    def __init__(self, names: Iterable[str], edge_pairs: Iterable[tuple[int, int]]):
        names = tuple(names)
        n = len(names)
        if n == 0:
            raise ValidationError("disconnected", "graph has no vertices")
        adj = [0] * n
        edges = []
        seen = set()
        for u, v in edge_pairs:
            if u == v:
                raise ValidationError("loop", names[u])
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise ValidationError("duplicate edge", (names[a], names[b]))
            seen.add((a, b))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
            edges.append((a, b))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", len(edges))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})
        object.__setattr__(self, "_hull_memo", {})
        object.__setattr__(self, "_dec_memo", {})
        if len(self._index) != n:
            raise ParseError("duplicate vertex name")
        # connectivity
        full = (1 << n) - 1
        reach = _bfs_mask(self, 1, full)
        if reach != full:
            missing = [names[v] for v in bits(full & ~reach)]
            raise ValidationError("disconnected", missing)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def vertex(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown vertex name: {name!r}") from None

    def name(self, v: int) -> str:
        return self.names[v]

    def vset(self, vertices: Iterable[int]) -> VertexSet:
        return VertexSet.from_iter(self.n, vertices)

    def vset_names(self, names: Iterable[str]) -> VertexSet:
        return VertexSet.from_iter(self.n, (self.vertex(s) for s in names))

    def full_set(self) -> VertexSet:
        return VertexSet.full(self.n)

    def empty_set(self) -> VertexSet:
        return VertexSet.empty(self.n)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.n, self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def names_of(self, s: VertexSet) -> list[str]:
        return [self.names[v] for v in s]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bfs_mask(g: Graph, start_mask: int, within_mask: int) -> int:
    """Vertices reachable from ``start_mask`` inside ``within_mask``."""
    adj = g.adj
    seen = start_mask & within_mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within_mask & ~seen
        seen |= frontier
    return seen


def load_graph(text: str) -> Graph:
    """Parse an edge-list document into a validated Graph.

    Each non-comment line holds exactly two whitespace-separated vertex
    names; '#' starts a comment.  Names are mapped to dense indices in
    first-appearance order.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def intern(tok: str) -> int:
        if tok not in index:
            index[tok] = len(names)
            names.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two vertex names, got {raw!r}")
        edges.append((intern(tokens[0]), intern(tokens[1])))
    if not names:
        raise ParseError("no edges or vertices in input")
    return Graph(names, edges)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges], "names": list(g.names)}


def graph_from_json(data: dict) -> Graph:
    names = data["names"]
    if len(names) != data["n"]:
        raise ParseError("names length disagrees with n")
    return Graph(names, [tuple(e) for e in data["edges"]])


def components(g: Graph, within: VertexSet) -> list[VertexSet]:
    """Connected components of the induced subgraph G[within], ordered by
    smallest member."""
    remaining = within.mask
    out = []
    while remaining:
        start = remaining & -remaining
        comp = _bfs_mask(g, start, remaining)
        out.append(VertexSet(g.n, comp))
        remaining &= ~comp
    return out


def component_masks(g: Graph, within_mask: int) -> list[int]:
    """Raw-mask variant of :func:`components` for internal hot loops."""
    remaining = within_mask
    out = []
    while remaining:
        start = remaining & -remaining
        comp = _bfs_mask(g, start, remaining)
        out.append(comp)
        remaining &= ~comp
    return out


def shortest_path(
    g: Graph, sources: VertexSet, targets: VertexSet, within: VertexSet
) -> list[int] | None:
    """Shortest path from ``sources`` to ``targets`` inside ``within``.

    Multi-source BFS; the returned path is the deterministic smallest-index
    one (smallest reachable target at minimum distance, then smallest-index
    predecessor at every step).  Returns None when no path exists.
    """
    if not sources or not targets:
        raise EmptyTerminal("sources and targets must be nonempty")
    return _shortest_path_mask(g, sources.mask, targets.mask, within.mask)


def _shortest_path_mask(
    g: Graph, src_mask: int, tgt_mask: int, within_mask: int
) -> list[int] | None:
    adj = g.adj
    layer = src_mask & within_mask
    if layer & tgt_mask:
        return [(layer & tgt_mask & -(layer & tgt_mask)).bit_length() - 1]
    if not layer:
        return None
    layers = [layer]
    seen = layer
    while True:
        nxt = 0
        for v in bits(layers[-1]):
            nxt |= adj[v]
        nxt &= within_mask & ~seen
        if not nxt:
            return None
        if nxt & tgt_mask:
            hit = nxt & tgt_mask
            layers.append(nxt)
            break
        layers.append(nxt)
        seen |= nxt
    # backtrack from smallest-index target through smallest-index predecessors
    cur = (hit & -hit).bit_length() - 1
    path = [cur]
    for depth in range(len(layers) - 2, -1, -1):
        prev = adj[cur] & layers[depth]
        cur = (prev & -prev).bit_length() - 1
        path.append(cur)
    path.reverse()
    return path


def is_clique(g: Graph, s: VertexSet) -> bool:
    """True iff all pairs in ``s`` are adjacent (vacuously for |s| <= 1)."""
    return _is_clique_mask(g, s.mask)


def _is_clique_mask(g: Graph, mask: int) -> bool:
    adj = g.adj
    for v in bits(mask):
        if mask & ~(adj[v] | (1 << v)):
            return False
    return True


def clique_number(g: Graph) -> int:
    """Exact maximum clique size via branch and bound.

    Exponential in the worst case; acceptable at desk scale.  Feeds only
    reporting fields and test bounds, never hot paths.
    """
    best = 0
    adj = g.adj

    def expand(size: int, cand: int):
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            expand(size + 1, cand & adj[v])
            cand ^= low

    expand(0, (1 << g.n) - 1)
    return best


def diameter(g: Graph) -> int:
    """Largest BFS eccentricity."""
    full = (1 << g.n) - 1
    best = 0
    for v in range(g.n):
        dist = 0
        seen = 1 << v
        frontier = seen
        while True:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            nxt &= full & ~seen
            if not nxt:
                break
            dist += 1
            seen |= nxt
            frontier = nxt
        best = max(best, dist)
    return best


def generate(kind: str, *, n: int | None = None, p: float | None = None,
             k: int | None = None, q: int | None = None, seed: int = 0,
             retries: int = 500) -> Graph:
    """Seeded connected instance generators.

    kinds:
      - "gnp-connected": G(n, p) resampled until connected (GenerationFailed
        after ``retries`` attempts);
      - "tree": uniform random attachment tree on n vertices;
      - "clique-chain": k cliques of size q glued along consecutive cut
        vertices.
    """
    rng = random.Random(seed)
    if kind == "tree":
        if n is None or n < 1:
            raise ValueError("tree requires n >= 1")
        names = [f"v{i}" for i in range(n)]
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        return Graph(names, edges)
    if kind == "gnp-connected":
        if n is None or n < 1 or p is None or not 0 < p <= 1:
            raise ValueError("gnp-connected requires n >= 1 and 0 < p <= 1")
        names = [f"v{i}" for i in range(n)]
        for _ in range(retries):
            edges = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < p
            ]
            try:
                return Graph(names, edges)
            except ValidationError:
                continue
        raise GenerationFailed(
            f"no connected G({n},{p}) sample within {retries} attempts"
        )
    if kind == "clique-chain":
        if k is None or q is None or k < 1 or q < 2:
            raise ValueError("clique-chain requires k >= 1 and q >= 2")
        n_total = k * (q - 1) + 1
        names = [f"v{i}" for i in range(n_total)]
        edges = []
        for block in range(k):
            base = block * (q - 1)
            group = range(base, base + q)
            edges.extend(
                (u, v) for u in group for v in group if u < v
            )
        return Graph(names, edges)
    raise ValueError(f"unknown generator kind: {kind!r}")
