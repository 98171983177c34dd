"""Learners over the halfspace family: empirical risk minimization, sample
compression, active learning, online learning (multiplicative weights and
majority vote), and teaching sets.

Everything rides on the per-edge cell decomposition: ERM scans blocks and
picks each pair's cheaper half, the active learner binary-searches first a
shortest path and then the block order, the teacher emits the boundary edge
plus block representatives, and the online feature family collects the
decomposition's building blocks so every halfspace is a short union.
Compression is independent of the decomposition; it rests on hulls and
imprints only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .cells import CellDecomposition, d_ab, decompose, enumerate_halfspaces, reconstruct
from .errors import (
    EmptySample,
    EmptyVersionSpace,
    InconsistentOracle,
    NotAHalfspace,
    NotRealizable,
    SeparationFailed,
)
from .graphs import Graph, VertexSet, bits, diameter
from .mconv import hull_set_greedy, imprints, is_mconvex, mhull, pair_hull
from .samples import Sample
from .separation import Halfspace, halfspace_separation, is_realizable


def _edge_orientations(g: Graph):
    for u, v in g.edges:
        yield u, v
        yield v, u


def _mistakes(pos_mask: int, neg_mask: int, h_mask: int) -> int:
    return (pos_mask & ~h_mask).bit_count() + (neg_mask & h_mask).bit_count()


# ---------------------------------------------------------------------------
# empirical risk minimization


def erm(g: Graph, x: Sample) -> tuple[Halfspace, Fraction]:
    """Exact empirical risk minimizer over the halfspace family.

    A mistake is a positive-labeled vertex outside the hypothesis or a
    negative-labeled one inside; risk is mistakes over the support size.
    Candidates are the trivial sets plus, for every edge orientation and
    every block index, the halfspace whose free pairs each take their
    cheaper half.  Ties keep the first candidate in scan order (trivial
    sets, then edges in order, then smaller block index, then first halves).
    """
    support = x.support
    if not support:
        raise EmptySample("ERM needs at least one labeled vertex")
    pos, neg = x.pos.mask, x.neg.mask
    full = (1 << g.n) - 1

    best_mask = 0
    best_wrong = _mistakes(pos, neg, 0)
    wrong_full = _mistakes(pos, neg, full)
    if wrong_full < best_wrong:
        best_wrong, best_mask = wrong_full, full

    for a, b in _edge_orientations(g):
        dec = decompose(g, a, b)
        if dec is None:
            continue
        for j in range(1, dec.p + 1):
            mask = dec.Astar.mask
            for k, blk in enumerate(dec.blocks, start=1):
                for pi in blk:
                    first, second = dec.pairs[pi]
                    if k < j:
                        mask |= first.mask
                    elif k > j:
                        mask |= second.mask
                    else:
                        # per-pair cost of each half: errors inside the pair
                        cost_first = (neg & first.mask).bit_count() + (
                            pos & second.mask
                        ).bit_count()
                        cost_second = (neg & second.mask).bit_count() + (
                            pos & first.mask
                        ).bit_count()
                        mask |= first.mask if cost_first <= cost_second else second.mask
            wrong = _mistakes(pos, neg, mask)
            if wrong < best_wrong:
                best_wrong, best_mask = wrong, mask

    risk = Fraction(best_wrong, len(support))
    return Halfspace(VertexSet(g.n, best_mask)), risk


# ---------------------------------------------------------------------------
# sample compression


def compress(g: Graph, x: Sample) -> Sample:
    """Compress a realizable sample to at most 4 * clique-number labeled
    points.

    One-sided samples keep a single example (smallest vertex).  Otherwise
    both hulls are built and, for each imprint vertex in ascending order,
    the lexicographically first pair of same-label sample points whose hull
    covers it is kept (a degenerate pair covers an imprint that is itself a
    sample point).  Labels of kept points are preserved.
    """
    if is_realizable(g, x) is None:
        raise NotRealizable("sample admits no consistent halfspace")
    pos_list = sorted(x.pos)
    neg_list = sorted(x.neg)
    if not neg_list:
        if not pos_list:
            return Sample(g.empty_set(), g.empty_set())
        return Sample(g.vset([pos_list[0]]), g.empty_set())
    if not pos_list:
        return Sample(g.empty_set(), g.vset([neg_list[0]]))

    a_hull = mhull(g, x.pos)
    b_hull = mhull(g, x.neg)
    imp_a, imp_b = imprints(g, a_hull, b_hull)

    def cover(imp: VertexSet, points: list[int]) -> int:
        kept = 0
        for target in sorted(imp):
            for i, p1 in enumerate(points):
                hit = None
                for p2 in points[i:]:
                    if (pair_hull(g, p1, p2) >> target) & 1:
                        hit = (p1, p2)
                        break
                if hit is not None:
                    kept |= (1 << hit[0]) | (1 << hit[1])
                    break
            else:
                raise AssertionError("imprint not covered by any sample pair")
        return kept

    kept_pos = cover(imp_a, pos_list)
    kept_neg = cover(imp_b, neg_list)
    return Sample(VertexSet(g.n, kept_pos), VertexSet(g.n, kept_neg))


def reconstruct_lscs(g: Graph, y: Sample) -> Halfspace:
    """Rebuild a halfspace consistent with every sample compressing to y.

    A sample with no kept negatives decodes to V, one with no kept
    positives to the empty set; otherwise the hulls of the kept points are
    separated along their mutual imprints.
    """
    if not y.neg:
        return Halfspace(g.full_set())
    if not y.pos:
        return Halfspace(g.empty_set())
    a_hull = mhull(g, y.pos)
    b_hull = mhull(g, y.neg)
    imp_a, imp_b = imprints(g, a_hull, b_hull)
    h = halfspace_separation(g, imp_a, imp_b)
    if h is None:
        raise SeparationFailed("imprint sets admit no separating halfspace")
    return h


# ---------------------------------------------------------------------------
# active learning


class LabelOracle:
    """Label callback with a query counter; answers must be consistent with
    a fixed target halfspace for the learner's guarantees to hold."""

    def __init__(self, fn: Callable[[int], int]):
        self._fn = fn
        self.queries = 0

    @classmethod
    def from_halfspace(cls, h: Halfspace) -> "LabelOracle":
        return cls(lambda v: 1 if v in h else -1)

    def query(self, v: int) -> int:
        self.queries += 1
        label = self._fn(v)
        if label not in (1, -1):
            raise ValueError(f"oracle returned {label!r}, expected +1/-1")
        return label


@dataclass(frozen=True)
class ActiveResult:
    halfspace: Halfspace
    queries: int
    hull_set_size: int
    path_edges: int
    block_count: int
    probed_blocks: tuple[int, int]
    query_bound: int


def active_learn(g: Graph, oracle: LabelOracle) -> ActiveResult:
    """Recover the target halfspace exactly.

    Queries a greedy hull set; a uniform answer settles V or the empty set.
    Otherwise a sign switch is located on a shortest positive-negative path
    by binary search, the decomposition across the switch edge is binary
    searched for the active block, and the representatives of the two
    candidate blocks pin down the cell selection.  Every vertex is asked at
    most once.  The per-run query bound is

        |hull set| + ceil(log2 diam) + ceil(log2 p) + |block j| + |block j+1| + 2.
    """
    answers: dict[int, int] = {}

    def ask(v: int) -> int:
        if v not in answers:
            answers[v] = oracle.query(v)
        return answers[v]

    def check_consistency(h: Halfspace):
        for v, label in answers.items():
            if (label == 1) != (v in h):
                raise InconsistentOracle(
                    f"answers match no halfspace (vertex {v})"
                )

    hull_set = hull_set_greedy(g)
    for v in hull_set:
        ask(v)
    positives = [v for v in hull_set if answers[v] == 1]
    negatives = [v for v in hull_set if answers[v] == -1]
    diam = max(1, diameter(g))
    base_bound = len(hull_set) + math.ceil(math.log2(diam)) + 2

    if not negatives:
        return ActiveResult(
            Halfspace(g.full_set()), oracle.queries, len(hull_set), 0, 0, (0, 0),
            base_bound,
        )
    if not positives:
        return ActiveResult(
            Halfspace(g.empty_set()), oracle.queries, len(hull_set), 0, 0, (0, 0),
            base_bound,
        )

    path = _find_path(g, positives[0], negatives[0])
    lo, hi = 0, len(path) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ask(path[mid]) == 1:
            lo = mid
        else:
            hi = mid
    u, v = path[lo], path[hi]

    dec = decompose(g, u, v)
    if dec is None:
        raise InconsistentOracle("sign switch on an edge with empty family")

    def representative(pi: int) -> int:
        first, second = dec.pairs[pi]
        return first.smallest() if first else second.smallest()

    def first_half_positive(pi: int) -> bool:
        first, second = dec.pairs[pi]
        rep = representative(pi)
        in_first = rep in first
        return (ask(rep) == 1) == in_first

    blo, bhi = 1, dec.p
    probes = 0
    while bhi - blo > 1:
        mid = (blo + bhi) // 2
        block = dec.blocks[mid - 1]
        if not block:
            raise InconsistentOracle("empty interior block")
        if first_half_positive(min(block)):
            blo = mid
        else:
            bhi = mid
        probes += 1

    j, j_next = blo, bhi
    selection: dict[int, bool] = {}
    for blk_index in {j, j_next}:
        for pi in dec.blocks[blk_index - 1]:
            selection[pi] = first_half_positive(pi)

    block_j = dec.blocks[j - 1]
    if any(not selection[pi] for pi in block_j):
        ell = j
        chosen = {pi for pi in block_j if selection[pi]}
    elif j_next > j:
        ell = j_next
        chosen = {pi for pi in dec.blocks[j_next - 1] if selection[pi]}
    else:
        ell = j
        chosen = set(block_j)
    h = reconstruct(dec, ell, chosen)
    check_consistency(h)

    bound = (
        len(hull_set)
        + math.ceil(math.log2(diam))
        + math.ceil(math.log2(max(1, dec.p)))
        + len(dec.blocks[j - 1])
        + (len(dec.blocks[j_next - 1]) if j_next > j else 0)
        + 2
    )
    return ActiveResult(
        halfspace=h,
        queries=oracle.queries,
        hull_set_size=len(hull_set),
        path_edges=len(path) - 1,
        block_count=dec.p,
        probed_blocks=(j, j_next),
        query_bound=bound,
    )


def _find_path(g: Graph, u: int, v: int) -> list[int]:
    from .graphs import _shortest_path_mask

    return _shortest_path_mask(g, 1 << u, 1 << v, (1 << g.n) - 1)


# ---------------------------------------------------------------------------
# online learning


@dataclass(frozen=True)
class FeatureFamily:
    """Building-block sets whose short unions express every nonempty
    halfspace: closed sides, cell halves, block prefixes/suffixes, and the
    universe."""

    sets: tuple[VertexSet, ...]
    provenance: tuple[str, ...]


def build_feature_family(g: Graph) -> FeatureFamily:
    seen: dict[int, str] = {}

    def put(mask: int, label: str):
        if mask and mask not in seen:
            seen[mask] = label

    for a, b in _edge_orientations(g):
        dec = decompose(g, a, b)
        if dec is None:
            continue
        tag = f"{g.name(a)}->{g.name(b)}"
        put(dec.Astar.mask, f"Astar({tag})")
        for pi, (first, second) in enumerate(dec.pairs):
            put(first.mask, f"cell-half({tag},{pi}')")
            put(second.mask, f"cell-half({tag},{pi}'')")
        prefix = 0
        for j, blk in enumerate(dec.blocks, start=1):
            put(prefix, f"B_below({tag},{j})")
            for pi in blk:
                prefix |= dec.pairs[pi][0].mask
        suffix = 0
        for j in range(dec.p, 0, -1):
            put(suffix, f"B_above({tag},{j})")
            for pi in dec.blocks[j - 1]:
                suffix |= dec.pairs[pi][1].mask
    put((1 << g.n) - 1, "universe")
    masks = sorted(seen)
    return FeatureFamily(
        sets=tuple(VertexSet(g.n, m) for m in masks),
        provenance=tuple(seen[m] for m in masks),
    )


@dataclass
class OnlineState:
    """State of one online learning session; step with :func:`online_step`."""

    mode: str
    n: int
    mistakes: int = 0
    # multiplicative-weights fields
    weights: np.ndarray | None = None
    theta: float = 0.0
    member_sets: tuple | None = None
    # majority-vote fields
    version_space: list[int] = field(default_factory=list)


def init_winnow(g: Graph, family: FeatureFamily | None = None) -> OnlineState:
    """Multiplicative-weights state: one weight per feature set, threshold
    equal to the number of sets, doubling on false negatives and zeroing on
    false positives."""
    if family is None:
        family = build_feature_family(g)
    s = len(family.sets)
    member_sets = tuple(
        np.fromiter(
            (i for i, fs in enumerate(family.sets) if v in fs),
            dtype=np.int64,
        )
        for v in range(g.n)
    )
    return OnlineState(
        mode="winnow",
        n=g.n,
        weights=np.ones(s, dtype=np.float64),
        theta=float(s),
        member_sets=member_sets,
    )


def init_halving(g: Graph, hypotheses=None) -> OnlineState:
    """Majority-vote state over the full halfspace family."""
    if hypotheses is None:
        hypotheses = enumerate_halfspaces(g)
    vs_masks = sorted(h.mask for h in hypotheses)
    return OnlineState(mode="halving", n=g.n, version_space=vs_masks)


def online_step(state: OnlineState, v: int, true_label: int) -> tuple[int, OnlineState]:
    """Predict the label of ``v``, then update the state with the truth.

    Returns (prediction, state); the state is updated in place.
    """
    if state.mode == "winnow":
        idx = state.member_sets[v]
        total = float(state.weights[idx].sum())
        pred = 1 if total >= state.theta else -1
        if pred != true_label:
            state.mistakes += 1
            if true_label == 1:
                state.weights[idx] *= 2.0
            else:
                state.weights[idx] = 0.0
        return pred, state
    if state.mode == "halving":
        if not state.version_space:
            raise EmptyVersionSpace("no consistent hypotheses remain")
        votes_in = sum(1 for m in state.version_space if (m >> v) & 1)
        pred = 1 if 2 * votes_in >= len(state.version_space) else -1
        if pred != true_label:
            state.mistakes += 1
        want = 1 if true_label == 1 else 0
        state.version_space = [
            m for m in state.version_space if (m >> v) & 1 == want
        ]
        if not state.version_space:
            raise EmptyVersionSpace("stream is not realizable")
        return pred, state
    raise ValueError(f"unknown online mode {state.mode!r}")


# ---------------------------------------------------------------------------
# teaching


def teaching_set(g: Graph, h: Halfspace) -> Sample:
    """Labeled set that identifies ``h`` uniquely among proper halfspaces.

    Trivial targets get one example.  Otherwise the smallest boundary edge
    is labeled, and the representatives of the active block (plus the next
    block when the active block is fully selected) are labeled as in the
    target; the support size is at most twice the largest block size plus
    two.
    """
    if not is_mconvex(g, h.members) or not is_mconvex(g, h.members.complement()):
        raise NotAHalfspace("target set is not a halfspace")
    full = (1 << g.n) - 1
    if h.mask == 0:
        return Sample(g.empty_set(), g.vset([0]))
    if h.mask == full:
        return Sample(g.vset([0]), g.empty_set())

    edge = None
    for a in bits(h.mask):
        out = g.adj[a] & ~h.mask
        if out:
            edge = (a, (out & -out).bit_length() - 1)
            break
    dec = decompose(g, *edge)
    if dec is None:
        raise NotAHalfspace("boundary edge has an empty family")

    labels: dict[int, int] = {edge[0]: 1, edge[1]: -1}

    selection: dict[int, bool] = {}
    for pi, (first, second) in enumerate(dec.pairs):
        if first.mask & ~h.mask == 0 and second.mask & h.mask == 0:
            selection[pi] = True
        elif second.mask & ~h.mask == 0 and first.mask & h.mask == 0:
            selection[pi] = False
        else:
            raise NotAHalfspace("target does not respect the cell structure")

    def emit_block(j: int):
        for pi in dec.blocks[j - 1]:
            first, second = dec.pairs[pi]
            rep = first.smallest() if first else second.smallest()
            labels[rep] = 1 if rep in h else -1

    mixed = [
        j
        for j, blk in enumerate(dec.blocks, start=1)
        if blk
        and any(selection[pi] for pi in blk)
        and not all(selection[pi] for pi in blk)
    ]
    if mixed:
        if len(mixed) != 1:
            raise NotAHalfspace("target does not respect the block order")
        emit_block(mixed[0])
    else:
        fully = [
            j
            for j, blk in enumerate(dec.blocks, start=1)
            if blk and all(selection[pi] for pi in blk)
        ]
        if fully:
            ell = max(fully)
            emit_block(ell)
            if ell < dec.p:
                emit_block(ell + 1)
        elif dec.pairs:
            emit_block(1)

    return Sample.from_labels(g.n, labels)


def teaching_bound(g: Graph, h: Halfspace) -> int:
    """The 2 * d_ab + 2 support bound for the edge the teacher uses."""
    if h.mask == 0 or h.mask == (1 << g.n) - 1:
        return 1
    for a in bits(h.mask):
        out = g.adj[a] & ~h.mask
        if out:
            b = (out & -out).bit_length() - 1
            dec = decompose(g, a, b)
            return 2 * d_ab(dec) + 2
    raise NotAHalfspace("halfspace has no boundary edge")
