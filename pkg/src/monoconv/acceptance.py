"""Acceptance suite: oracle-equivalence and bound-conformance checks at
desk scale, shared by the pytest module and the ``acceptance`` CLI command.

Each criterion runs over the standard corpus (canonical graphs, every
connected graph on at most six vertices, and seeded random graphs) and
reports one pass/fail line.  Tolerances are exact unless a criterion states
a time or memory budget.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cells import d_ab, decompose, enumerate_edge, enumerate_halfspaces, vc_hat
from .corpus import acceptance_corpus
from .errors import MonoconvError
from .graphs import Graph, VertexSet, clique_number, generate
from .learn import (
    LabelOracle,
    active_learn,
    build_feature_family,
    compress,
    erm,
    init_halving,
    init_winnow,
    online_step,
    reconstruct_lscs,
    teaching_set,
)
from .mconv import is_mconvex, make_closed_pair, mhull, shadow_closure
from .oracle import (
    OracleBudget,
    erm_bruteforce,
    halfspaces_bruteforce,
    hull_closure_bruteforce,
    vc_bruteforce,
)
from .samples import Sample
from .separation import build_formula, build_formula_direct, halfspace_separation
from .twosat import Assignment


@dataclass
class AcceptanceConfig:
    seed: int = 1
    gnp_count: int = 50
    separation_pairs: int = 200
    erm_random_samples: int = 200
    compression_random_samples: int = 500
    winnow_streams: int = 20
    winnow_stream_length: int = 40
    hull_random_subsets: int = 1000
    exhaustive_n: int = 7
    hull_exhaustive_n: int = 8
    enumeration_time_budget_s: float = 300.0
    scale_n: int = 200
    scale_p: float = 0.05
    scale_seed: int = 1
    scale_time_budget_s: float = 60.0
    scale_memory_budget_mb: int = 1024
    planted_failure: bool = False


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


class AcceptanceContext:
    """Corpus plus per-graph caches shared across criteria."""

    def __init__(self, config: AcceptanceConfig):
        self.config = config
        self.graphs = acceptance_corpus(config.seed, config.gnp_count)
        if not self.graphs:
            raise ValueError("acceptance corpus is empty")
        self._hm: dict[int, list[int]] = {}
        self._vc: dict[int, int] = {}
        self._omega: dict[int, int] = {}
        self.budget = OracleBudget(max_n=12)

    def hm_masks(self, g: Graph) -> list[int]:
        key = id(g)
        if key not in self._hm:
            self._hm[key] = sorted(h.mask for h in halfspaces_bruteforce(g, self.budget))
        return self._hm[key]

    def vc(self, g: Graph) -> int:
        key = id(g)
        if key not in self._vc:
            fam = [VertexSet(g.n, m) for m in self.hm_masks(g)]
            self._vc[key] = vc_bruteforce(fam, g.full_set(), self.budget)
        return self._vc[key]

    def omega(self, g: Graph) -> int:
        key = id(g)
        if key not in self._omega:
            self._omega[key] = clique_number(g)
        return self._omega[key]


def _timed(number, name, fn) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except MonoconvError as err:
        passed, detail = False, f"error: {err}"
    seconds = time.perf_counter() - start
    return CriterionResult(number, name, passed, detail, seconds)


def _sign_vectors(n: int):
    """All nonempty partial labelings of n vertices as (pos, neg) masks."""
    for code in product((0, 1, 2), repeat=n):
        pos = neg = 0
        for v, digit in enumerate(code):
            if digit == 1:
                pos |= 1 << v
            elif digit == 2:
                neg |= 1 << v
        if pos | neg:
            yield pos, neg


def _sample(g: Graph, pos: int, neg: int) -> Sample:
    return Sample(VertexSet(g.n, pos), VertexSet(g.n, neg))


def criterion_1_enumeration(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        start = time.perf_counter()
        checked = 0
        for name, g in ctx.graphs:
            got = sorted(h.mask for h in enumerate_halfspaces(g))
            want = ctx.hm_masks(g)
            if got != want:
                return False, f"{name}: enumeration disagrees with brute force"
            checked += 1
        elapsed = time.perf_counter() - start
        if elapsed >= ctx.config.enumeration_time_budget_s:
            return False, f"{checked} graphs but took {elapsed:.0f}s"
        return True, f"{checked} graphs enumerate identically to brute force"

    return _timed(1, "enumeration equivalence", run)


def criterion_2_separation(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        pairs = 0
        for gi, (name, g) in enumerate(ctx.graphs):
            rng = random.Random(ctx.config.seed * 100003 + gi)
            masks = ctx.hm_masks(g)
            for _ in range(ctx.config.separation_pairs):
                amask = bmask = 0
                for v in range(g.n):
                    r = rng.random()
                    if r < 0.18:
                        amask |= 1 << v
                    elif r < 0.36:
                        bmask |= 1 << v
                    elif r < 0.40:
                        amask |= 1 << v
                        bmask |= 1 << v
                h = halfspace_separation(
                    g, VertexSet(g.n, amask), VertexSet(g.n, bmask)
                )
                want = any(amask & ~m == 0 and bmask & m == 0 for m in masks)
                if (h is not None) != want:
                    return False, f"{name}: separation disagrees with brute force"
                if h is not None:
                    ok = (
                        amask & ~h.mask == 0
                        and bmask & h.mask == 0
                        and is_mconvex(g, h.members)
                        and is_mconvex(g, h.members.complement())
                    )
                    if not ok:
                        return False, f"{name}: returned set is not a separator"
                pairs += 1
        return True, f"{pairs} random (A,B) pairs match brute force"

    return _timed(2, "separation correctness", run)


def _model_sets(formula):
    out = set()
    inst = formula.inst
    for values in product((0, 1), repeat=inst.var_count):
        asg = Assignment(values)
        if asg.satisfies(inst):
            out.add(
                frozenset(x for x, var in formula.var_of.items() if values[var] == 1)
            )
    return out


def criterion_3_formula_equivalence(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        edges = 0
        for name, g in ctx.graphs:
            masks = ctx.hm_masks(g)
            for u, v in g.edges:
                for a, b in ((u, v), (v, u)):
                    if decompose(g, a, b) is None:
                        continue
                    astar, bstar = shadow_closure(g, g.vset([a]), g.vset([b]))
                    pair = make_closed_pair(g, astar, bstar)
                    m1 = _model_sets(build_formula(g, pair))
                    m2 = _model_sets(build_formula_direct(g, pair))
                    if m1 != m2:
                        return False, f"{name} edge {a},{b}: formulas disagree"
                    want = {
                        frozenset(x for x in pair.R if (m >> x) & 1)
                        for m in masks
                        if pair.A.mask & ~m == 0 and pair.B.mask & m == 0
                    }
                    if m1 != want:
                        return False, f"{name} edge {a},{b}: model/halfspace bijection fails"
                    edges += 1
        return True, f"{edges} edge pairs: model sets coincide and count the family"

    return _timed(3, "formula equivalence and count bijection", run)


def criterion_4_vc(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        edges = 0
        for name, g in ctx.graphs:
            masks = ctx.hm_masks(g)
            true_vc = ctx.vc(g)
            for u, v in g.edges:
                for a, b in ((u, v), (v, u)):
                    dec = decompose(g, a, b)
                    fam = [
                        VertexSet(g.n, m)
                        for m in masks
                        if (m >> a) & 1 and not (m >> b) & 1
                    ]
                    want = vc_bruteforce(fam, g.full_set(), ctx.budget) if fam else 0
                    got = d_ab(dec) if dec is not None else 0
                    if got != want:
                        return False, f"{name} edge {a},{b}: d_ab {got} != VC {want}"
                    edges += 1
            hat = vc_hat(g)
            if not hat <= true_vc <= hat + 4:
                return False, f"{name}: sandwich {hat} <= {true_vc} <= {hat}+4 fails"
        # the pinned K4 datapoint
        k4 = next(g for name, g in ctx.graphs if name == "K4")
        if vc_hat(k4) != 2 or ctx.vc(k4) != 4:
            return False, "K4 datapoint (vc_hat=2, VC=4) fails"
        return True, f"{edges} edges match brute-force VC; sandwich holds everywhere"

    return _timed(4, "VC characterisation and sandwich", run)


def criterion_5_counting(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        for name, g in ctx.graphs:
            count = len(enumerate_halfspaces(g))
            bound = g.m * (1 << ctx.vc(g)) + 2
            if count > bound:
                return False, f"{name}: {count} halfspaces exceed bound {bound}"
        return True, f"|family| <= m*2^d + 2 on all {len(ctx.graphs)} graphs"

    return _timed(5, "counting bound", run)


def criterion_6_erm(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        exhaustive = 0
        randomized = 0
        for gi, (name, g) in enumerate(ctx.graphs):
            masks = ctx.hm_masks(g)

            def brute(pos, neg):
                best = min(
                    (pos & ~m).bit_count() + (neg & m).bit_count() for m in masks
                )
                return Fraction(best, (pos | neg).bit_count())

            if g.n <= ctx.config.exhaustive_n:
                for pos, neg in _sign_vectors(g.n):
                    _, risk = erm(g, _sample(g, pos, neg))
                    if risk != brute(pos, neg):
                        return False, f"{name}: exhaustive ERM mismatch"
                    exhaustive += 1
            else:
                rng = random.Random(ctx.config.seed * 7919 + gi)
                for _ in range(ctx.config.erm_random_samples):
                    pos = neg = 0
                    for v in range(g.n):
                        r = rng.random()
                        if r < 1 / 3:
                            pos |= 1 << v
                        elif r < 2 / 3:
                            neg |= 1 << v
                    if not pos | neg:
                        continue
                    _, risk = erm(g, _sample(g, pos, neg))
                    if risk != brute(pos, neg):
                        return False, f"{name}: randomized ERM mismatch"
                    randomized += 1
        # the pinned P4 datapoint
        p4 = next(g for name, g in ctx.graphs if name == "P4")
        x = Sample.from_named_labels(p4, {"a": 1, "b": -1, "c": 1, "d": -1})
        if erm(p4, x)[1] != Fraction(1, 4):
            return False, "P4 alternating-sample risk is not 1/4"
        return True, f"{exhaustive} exhaustive + {randomized} random samples optimal"

    return _timed(6, "ERM optimality", run)


def criterion_7_compression(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        checked = 0
        for gi, (name, g) in enumerate(ctx.graphs):
            masks = ctx.hm_masks(g)
            mask_set = set(masks)
            omega = ctx.omega(g)
            beta_memo: dict[tuple[int, int], int] = {}

            def beta(y: Sample) -> int:
                key = (y.pos.mask, y.neg.mask)
                if key not in beta_memo:
                    beta_memo[key] = reconstruct_lscs(g, y).mask
                return beta_memo[key]

            def check(x: Sample):
                y = compress(g, x)
                if len(y.support) > 4 * omega:
                    return f"{name}: compressed support exceeds 4*omega"
                if not (y.pos <= x.pos and y.neg <= x.neg):
                    return f"{name}: compression invented labels"
                h = beta(y)
                if x.pos.mask & ~h or x.neg.mask & h:
                    return f"{name}: reconstruction inconsistent with sample"
                if h not in mask_set:
                    return f"{name}: reconstruction not a halfspace"
                for v in x.support - y.support:
                    if beta(compress(g, x.drop(v))) != h:
                        return f"{name}: unstable under deleting vertex {v}"
                return None

            if g.n <= ctx.config.exhaustive_n:
                for pos, neg in _sign_vectors(g.n):
                    if not any(pos & ~m == 0 and neg & m == 0 for m in masks):
                        continue
                    err = check(_sample(g, pos, neg))
                    if err:
                        return False, err
                    checked += 1
            else:
                rng = random.Random(ctx.config.seed * 104729 + gi)
                for _ in range(ctx.config.compression_random_samples):
                    target = rng.choice(masks)
                    pos = neg = 0
                    for v in range(g.n):
                        if rng.random() < 0.55:
                            if (target >> v) & 1:
                                pos |= 1 << v
                            else:
                                neg |= 1 << v
                    if not pos | neg:
                        continue
                    err = check(_sample(g, pos, neg))
                    if err:
                        return False, err
                    checked += 1
        return True, f"{checked} realizable samples: size/consistency/properness/stability"

    return _timed(7, "sample compression scheme", run)


def criterion_8_active(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        runs = 0
        from .separation import Halfspace

        for name, g in ctx.graphs:
            for target in ctx.hm_masks(g):
                oracle = LabelOracle(lambda v, m=target: 1 if (m >> v) & 1 else -1)
                res = active_learn(g, oracle)
                if res.halfspace.mask != target:
                    return False, f"{name}: wrong halfspace for target {target:b}"
                if res.queries > res.query_bound:
                    return (
                        False,
                        f"{name}: {res.queries} queries exceed bound {res.query_bound}",
                    )
                runs += 1
        return True, f"{runs} targets recovered exactly within the query bound"

    return _timed(8, "active learning", run)


def criterion_9_online(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        halving_runs = 0
        winnow_runs = 0
        for gi, (name, g) in enumerate(ctx.graphs):
            masks = ctx.hm_masks(g)
            halving_bound = math.ceil(math.log2(len(masks)))
            family = build_feature_family(g)
            winnow_bound = 8 * (ctx.vc(g) + 4) * (1 + math.log2(len(family.sets)))
            for target in masks:
                # adversarial max-disagreement stream for the majority vote
                state = init_halving(g, [VertexSetHalfspace(g, m) for m in masks])
                for _ in range(4 * g.n):
                    vs_len = len(state.version_space)
                    if vs_len == 1:
                        break
                    best_v, best_bal = None, 0
                    for v in range(g.n):
                        inside = sum(
                            1 for m in state.version_space if (m >> v) & 1
                        )
                        bal = min(inside, vs_len - inside)
                        if bal > best_bal:
                            best_bal, best_v = bal, v
                    if best_v is None:
                        break
                    online_step(state, best_v, 1 if (target >> best_v) & 1 else -1)
                if state.mistakes > halving_bound:
                    return (
                        False,
                        f"{name}: halving made {state.mistakes} > {halving_bound} mistakes",
                    )
                halving_runs += 1

                for si in range(ctx.config.winnow_streams):
                    rng = random.Random(ctx.config.seed * 31 + gi * 977 + si)
                    state = init_winnow(g, family)
                    for _ in range(ctx.config.winnow_stream_length):
                        v = rng.randrange(g.n)
                        online_step(state, v, 1 if (target >> v) & 1 else -1)
                    if state.mistakes > winnow_bound:
                        return (
                            False,
                            f"{name}: winnow made {state.mistakes} > {winnow_bound:.1f}",
                        )
                    winnow_runs += 1
        return True, f"{halving_runs} halving + {winnow_runs} winnow runs within bounds"

    return _timed(9, "online learning", run)


def VertexSetHalfspace(g: Graph, mask: int):
    from .separation import Halfspace

    return Halfspace(VertexSet(g.n, mask))


def criterion_10_teaching(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        taught = 0
        from .separation import Halfspace

        for name, g in ctx.graphs:
            masks = ctx.hm_masks(g)
            d = ctx.vc(g)
            full = (1 << g.n) - 1
            proper = [m for m in masks if m not in (0, full)]
            for target in proper:
                ts = teaching_set(g, Halfspace(VertexSet(g.n, target)))
                if len(ts.support) > 2 * d + 2:
                    return False, f"{name}: teaching set exceeds 2d+2"
                consistent = [
                    m
                    for m in proper
                    if ts.pos.mask & ~m == 0 and ts.neg.mask & m == 0
                ]
                if consistent != [target]:
                    return False, f"{name}: teaching set not unique for {target:b}"
                taught += 1
            # trivial hypotheses close the recursive plan: one example each,
            # unique among the remaining pair
            if 0 in masks and full in masks:
                ts_empty = teaching_set(g, Halfspace(VertexSet(g.n, 0)))
                ts_full = teaching_set(g, Halfspace(VertexSet(g.n, full)))
                ok = (
                    len(ts_empty.support) == 1
                    and ts_empty.neg
                    and len(ts_full.support) == 1
                    and ts_full.pos
                )
                if not ok:
                    return False, f"{name}: trivial teaching sets malformed"
        return True, f"{taught} proper halfspaces taught uniquely within 2d+2"

    return _timed(10, "teaching sets", run)


def criterion_11_hull(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        checked = 0
        for gi, (name, g) in enumerate(ctx.graphs):
            if g.n <= ctx.config.hull_exhaustive_n:
                subsets = range(1 << g.n)
            else:
                rng = random.Random(ctx.config.seed * 613 + gi)
                subsets = (
                    rng.randrange(1 << g.n)
                    for _ in range(ctx.config.hull_random_subsets)
                )
            for mask in subsets:
                s = VertexSet(g.n, mask)
                if mhull(g, s) != hull_closure_bruteforce(g, s, ctx.budget):
                    return False, f"{name}: hull mismatch on {mask:b}"
                checked += 1
        return True, f"{checked} subsets: hull equals interval-closure fixpoint"

    return _timed(11, "hull oracle equivalence", run)


def criterion_12_scale(ctx: AcceptanceContext) -> CriterionResult:
    def run():
        cfg = ctx.config
        start = time.perf_counter()
        g = generate(
            "gnp-connected", n=cfg.scale_n, p=cfg.scale_p, seed=cfg.scale_seed
        )
        for u, v in g.edges:
            decompose(g, u, v)
            decompose(g, v, u)
        hat = vc_hat(g)
        count = len(enumerate_halfspaces(g))
        elapsed = time.perf_counter() - start
        try:
            import resource

            rss_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
        except ImportError:  # non-POSIX fallback
            rss_mb = 0.0
        if elapsed >= cfg.scale_time_budget_s:
            return False, f"n={cfg.scale_n} run took {elapsed:.1f}s >= {cfg.scale_time_budget_s}s"
        if rss_mb >= cfg.scale_memory_budget_mb:
            return False, f"peak memory {rss_mb:.0f}MB over budget"
        return (
            True,
            f"n={cfg.scale_n} m={g.m}: all edges decomposed, vc_hat={hat}, "
            f"|family|={count}, {elapsed:.1f}s, {rss_mb:.0f}MB peak",
        )

    return _timed(12, "scale smoke test", run)


CRITERIA = [
    criterion_1_enumeration,
    criterion_2_separation,
    criterion_3_formula_equivalence,
    criterion_4_vc,
    criterion_5_counting,
    criterion_6_erm,
    criterion_7_compression,
    criterion_8_active,
    criterion_9_online,
    criterion_10_teaching,
    criterion_11_hull,
    criterion_12_scale,
]


def run_acceptance(
    config: AcceptanceConfig | None = None,
    numbers: list[int] | None = None,
    echo=None,
) -> list[CriterionResult]:
    config = config or AcceptanceConfig()
    ctx = AcceptanceContext(config)
    results = []
    for fn in CRITERIA:
        result = fn(ctx)
        if numbers and result.number not in numbers:
            continue
        results.append(result)
        if echo:
            echo(result.line())
    if config.planted_failure:
        planted = CriterionResult(
            0, "planted failure self-test", False, "configured failure fixture", 0.0
        )
        results.append(planted)
        if echo:
            echo(planted.line())
    return results
