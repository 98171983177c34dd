import random
from itertools import product

import pytest

from monoconv.errors import InvalidPair
from monoconv.graphs import VertexSet, generate
from monoconv.mconv import is_mconvex, make_closed_pair, shadow_closure
from monoconv.oracle import halfspaces_bruteforce
from monoconv.samples import Sample
from monoconv.separation import (
    build_formula,
    build_formula_direct,
    halfspace_separation,
    is_realizable,
)
from monoconv.twosat import Assignment

from conftest import vs


def closed_pair(g, a_names, b_names):
    astar, bstar = shadow_closure(g, vs(g, a_names), vs(g, b_names))
    pair = make_closed_pair(g, astar, bstar)
    assert pair is not None
    return pair


def model_sets(formula):
    """Set of residue subsets (as frozensets of vertices) over all models."""
    inst = formula.inst
    out = set()
    for values in product((0, 1), repeat=inst.var_count):
        asg = Assignment(values)
        if asg.satisfies(inst):
            out.add(
                frozenset(x for x, v in formula.var_of.items() if values[v] == 1)
            )
    return out


class TestBuildFormula:
    def test_k3_structure(self, k3):
        pair = closed_pair(k3, "a", "b")
        f = build_formula(k3, pair)
        c = k3.vertex("c")
        assert f.anchors[c] == vs(k3, "c")
        assert not f.arcs_a and not f.arcs_b
        tags = set(f.inst.tags)
        assert "difference" not in tags and "implicationA" not in tags
        assert len(model_sets(f)) == 2

    def test_k4_structure(self, k4):
        pair = closed_pair(k4, "1", "2")
        f = build_formula(k4, pair)
        v3, v4 = k4.vertex("3"), k4.vertex("4")
        assert f.anchors[v3] == vs(k4, "3")
        assert f.anchors[v4] == vs(k4, "4")
        assert not f.arcs_a and not f.arcs_b
        assert "difference" not in set(f.inst.tags)
        assert len(model_sets(f)) == 4

    def test_p4_empty_residue(self, p4):
        pair = closed_pair(p4, "b", "c")
        f = build_formula(p4, pair)
        assert f.inst.var_count == 0 and not f.inst.clauses
        assert model_sets(f) == {frozenset()}

    def test_diamond_difference(self, diamond):
        pair = closed_pair(diamond, "1", "2")
        f = build_formula(diamond, pair)
        assert "difference" in set(f.inst.tags)
        assert model_sets(f) == {
            frozenset({diamond.vertex("3")}),
            frozenset({diamond.vertex("4")}),
        }

    def test_invalid_pair(self, p4):
        pair = closed_pair(p4, "b", "c")
        bad = type(pair)(
            A=pair.A,
            B=vs(p4, "a"),  # not disjoint from A = {a, b}
            R=pair.R,
            boundary_r=pair.boundary_r,
            bd_ab=pair.bd_ab,
            bd_ba=pair.bd_ba,
        )
        with pytest.raises(InvalidPair):
            build_formula(p4, bad)


class TestFormulaEquivalence:
    def graphs(self, canonical_graphs, bowtie, diamond):
        return list(canonical_graphs.values()) + [bowtie, diamond]

    def test_phi_variants_agree_on_corpus(self, canonical_graphs, bowtie, diamond):
        for g in self.graphs(canonical_graphs, bowtie, diamond):
            fam = halfspaces_bruteforce(g)
            for u, v in g.edges:
                for a, b in ((u, v), (v, u)):
                    astar, bstar = shadow_closure(g, g.vset([a]), g.vset([b]))
                    if astar.mask & bstar.mask:
                        continue
                    pair = make_closed_pair(g, astar, bstar)
                    f1 = build_formula(g, pair)
                    f2 = build_formula_direct(g, pair)
                    m1, m2 = model_sets(f1), model_sets(f2)
                    assert m1 == m2
                    # model/halfspace bijection against the brute-force family
                    want = {
                        frozenset(x for x in pair.R if (h.mask >> x) & 1)
                        for h in fam
                        if pair.A <= h and not (h.mask & pair.B.mask)
                    }
                    assert m1 == want

    def test_k4_pair_model_count_matches_oracle(self, k4):
        fam = halfspaces_bruteforce(k4)
        pair = closed_pair(k4, "1", "2")
        f = build_formula(k4, pair)
        count = len(model_sets(f))
        want = sum(
            1 for h in fam if pair.A <= h and not (h.mask & pair.B.mask)
        )
        assert count == want == 4


class TestHalfspaceSeparation:
    def test_c4(self, c4):
        h = halfspace_separation(c4, vs(c4, "a"), vs(c4, "b"))
        assert h.members == vs(c4, "a,d")

    def test_c5_no(self, c5):
        assert halfspace_separation(c5, vs(c5, "v1"), vs(c5, "v3")) is None

    def test_p4_deterministic(self, p4):
        h = halfspace_separation(p4, vs(p4, "a"), vs(p4, "c"))
        assert h.members in (vs(p4, "a"), vs(p4, "a,b"))
        again = halfspace_separation(p4, vs(p4, "a"), vs(p4, "c"))
        assert h.members == again.members
        assert is_mconvex(p4, h.members)
        assert is_mconvex(p4, h.members.complement())

    def test_trivial_inputs(self, p4):
        assert halfspace_separation(p4, p4.empty_set(), vs(p4, "a")).members == p4.empty_set()
        assert halfspace_separation(p4, vs(p4, "a"), p4.empty_set()).members == p4.full_set()
        assert halfspace_separation(p4, p4.empty_set(), p4.empty_set()).members == p4.full_set()
        assert halfspace_separation(p4, vs(p4, "a"), vs(p4, "a")) is None

    def test_against_oracle_random_pairs(self, canonical_graphs, bowtie, diamond):
        graphs = list(canonical_graphs.values()) + [bowtie, diamond]
        rng = random.Random(17)
        for g in graphs:
            fam = halfspaces_bruteforce(g)
            masks = [h.mask for h in fam]
            for _ in range(150):
                amask, bmask = 0, 0
                for x in range(g.n):
                    r = rng.random()
                    if r < 0.25:
                        amask |= 1 << x
                    elif r < 0.5:
                        bmask |= 1 << x
                h = halfspace_separation(
                    g, VertexSet(g.n, amask), VertexSet(g.n, bmask)
                )
                want = any(
                    amask & ~m == 0 and bmask & m == 0 for m in masks
                )
                if want:
                    assert h is not None
                    assert amask & ~h.mask == 0
                    assert bmask & h.mask == 0
                    assert is_mconvex(g, h.members)
                    assert is_mconvex(g, h.members.complement())
                else:
                    assert h is None

    def test_random_graphs_against_oracle(self):
        rng = random.Random(19)
        for i in range(8):
            g = generate("gnp-connected", n=8, p=0.3 + 0.05 * (i % 4), seed=200 + i)
            fam = halfspaces_bruteforce(g)
            masks = [h.mask for h in fam]
            for _ in range(60):
                amask = rng.randrange(1, 1 << g.n)
                bmask = rng.randrange(1, 1 << g.n) & ~amask
                if not bmask:
                    continue
                h = halfspace_separation(
                    g, VertexSet(g.n, amask), VertexSet(g.n, bmask)
                )
                want = any(amask & ~m == 0 and bmask & m == 0 for m in masks)
                assert (h is not None) == want


class TestIsRealizable:
    def test_p4(self, p4):
        h = is_realizable(p4, Sample.from_named_labels(p4, {"a": 1, "d": -1}))
        assert h is not None
        assert p4.vertex("a") in h and p4.vertex("d") not in h

    def test_c4_no(self, c4):
        x = Sample.from_named_labels(c4, {"a": 1, "c": 1, "b": -1})
        assert is_realizable(c4, x) is None

    def test_k3_all_positive(self, k3):
        x = Sample.from_named_labels(k3, {"a": 1, "b": 1, "c": 1})
        assert is_realizable(k3, x).members == k3.full_set()
