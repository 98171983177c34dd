"""Exponential-time brute-force references.

Everything here is a correctness anchor for tests and acceptance runs, never
a production path.  The module is deliberately independent of the polynomial
algorithms: intervals come from exhaustive induced-path search, convexity
and hulls from interval closure, and the remaining oracles enumerate
subsets.  Budgets fail loudly instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from weakref import WeakKeyDictionary

from .errors import BudgetExceeded
from .graphs import Graph, VertexSet, bits
from .samples import Sample


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 12
    max_subsets: int = 1 << 20


DEFAULT_BUDGET = OracleBudget()

_interval_tables: "WeakKeyDictionary[Graph, dict]" = WeakKeyDictionary()


def _check_n(g: Graph, budget: OracleBudget):
    if g.n > budget.max_n:
        raise BudgetExceeded(f"n={g.n} exceeds oracle budget max_n={budget.max_n}")
    if 1 << g.n > budget.max_subsets:
        raise BudgetExceeded(f"2^{g.n} exceeds max_subsets={budget.max_subsets}")


def interval_bruteforce(
    g: Graph, u: int, v: int, budget: OracleBudget = DEFAULT_BUDGET
) -> VertexSet:
    """All vertices on some induced u-v path, by exhaustive DFS.

    A partial path may be extended only by a vertex adjacent to its last
    vertex and nonadjacent to every earlier one, so accepted paths induce
    exactly a path in G.
    """
    _check_n(g, budget)
    return VertexSet(g.n, _interval_mask(g, u, v))


def _interval_mask(g: Graph, u: int, v: int) -> int:
    if u == v:
        return 1 << u
    adj = g.adj
    result = 0
    # stack entries: (last vertex, path mask, mask of earlier-than-last)
    stack = [(u, 1 << u, 0)]
    while stack:
        last, path, earlier = stack.pop()
        for w in bits(adj[last] & ~path):
            if adj[w] & earlier:
                continue
            if w == v:
                result |= path | (1 << v)
            else:
                stack.append((w, path | (1 << w), earlier | (1 << last)))
    return result


def interval_table(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> dict:
    """Memoized map (u, v) with u <= v -> interval mask."""
    table = _interval_tables.get(g)
    if table is None:
        _check_n(g, budget)
        table = {}
        for u in range(g.n):
            for v in range(u, g.n):
                table[(u, v)] = _interval_mask(g, u, v)
        _interval_tables[g] = table
    return table


def is_mconvex_bruteforce(
    g: Graph, s: VertexSet, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """Convexity by direct interval containment."""
    table = interval_table(g, budget)
    return _convex_mask(g, s.mask, table)


def _convex_mask(g: Graph, mask: int, table: dict) -> bool:
    members = list(bits(mask))
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if table[(u, v)] & ~mask:
                return False
    return True


def hull_closure_bruteforce(
    g: Graph, s: VertexSet, budget: OracleBudget = DEFAULT_BUDGET
) -> VertexSet:
    """Fixpoint of adding all pairwise intervals; the reference m-hull."""
    table = interval_table(g, budget)
    mask = s.mask
    while True:
        new = mask
        members = list(bits(mask))
        for i, u in enumerate(members):
            for v in members[i:]:
                new |= table[(u, v)]
        if new == mask:
            return VertexSet(g.n, mask)
        mask = new


def halfspaces_bruteforce(
    g: Graph, budget: OracleBudget = DEFAULT_BUDGET
) -> set[VertexSet]:
    """All S with S and its complement both m-convex, over all 2^n subsets."""
    _check_n(g, budget)
    table = interval_table(g, budget)
    full = (1 << g.n) - 1
    out = set()
    for mask in range(1 << g.n):
        if _convex_mask(g, mask, table) and _convex_mask(g, full & ~mask, table):
            out.add(VertexSet(g.n, mask))
    return out


def vc_bruteforce(
    family, ground: VertexSet, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Largest shattered subset of ``ground``, by increasing-size scan."""
    if 1 << len(ground) > budget.max_subsets:
        raise BudgetExceeded(f"2^{len(ground)} subsets exceed the oracle budget")
    masks = sorted({h.mask if isinstance(h, VertexSet) else int(h) for h in family})
    if not masks:
        return 0
    points = sorted(ground)
    best = 0
    for k in range(1, len(points) + 1):
        found = False
        for combo in combinations(points, k):
            smask = 0
            for v in combo:
                smask |= 1 << v
            traces = {h & smask for h in masks}
            if len(traces) == 1 << k:
                found = True
                break
        if not found:
            break
        best = k
    return best


def erm_bruteforce(
    g: Graph, sample: Sample, budget: OracleBudget = DEFAULT_BUDGET
) -> Fraction:
    """Minimum empirical risk over all halfspaces found by brute force."""
    support = sample.support
    if not support:
        raise ValueError("sample has empty support")
    best = None
    for h in halfspaces_bruteforce(g, budget):
        wrong = (sample.pos.mask & ~h.mask).bit_count() + (
            sample.neg.mask & h.mask
        ).bit_count()
        if best is None or wrong < best:
            best = wrong
    return Fraction(best, len(support))


def min_hull_set_bruteforce(
    g: Graph, budget: OracleBudget = DEFAULT_BUDGET
) -> VertexSet:
    """Lexicographically first smallest S with hull(S) = V."""
    _check_n(g, budget)
    full = (1 << g.n) - 1
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            s = VertexSet.from_iter(g.n, combo)
            if hull_closure_bruteforce(g, s, budget).mask == full:
                return s
    raise AssertionError("V itself is always a hull set")
