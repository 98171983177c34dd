import random

import pytest

from monoconv.errors import BadInput, EmptyInput, NotFixpoint
from monoconv.graphs import VertexSet, generate, is_clique
from monoconv.mconv import (
    hull_set_greedy,
    imprints,
    is_mconvex,
    make_closed_pair,
    mhull,
    shadow,
    shadow_closure,
)
from monoconv.oracle import (
    halfspaces_bruteforce,
    hull_closure_bruteforce,
    is_mconvex_bruteforce,
)

from conftest import vs


class TestIsMconvex:
    def test_examples(self, c4, p4, k4):
        assert not is_mconvex(c4, vs(c4, "a,c"))
        assert is_mconvex(p4, vs(p4, "a,b"))
        for mask in range(1 << k4.n):
            assert is_mconvex(k4, VertexSet(k4.n, mask))

    def test_trivial_sets(self, canonical_graphs):
        for g in canonical_graphs.values():
            assert is_mconvex(g, g.empty_set())
            assert is_mconvex(g, g.full_set())

    def test_matches_interval_definition(self, canonical_graphs, bowtie, diamond):
        graphs = list(canonical_graphs.values()) + [bowtie, diamond]
        for g in graphs:
            for mask in range(1 << g.n):
                s = VertexSet(g.n, mask)
                assert is_mconvex(g, s) == is_mconvex_bruteforce(g, s)


class TestMhull:
    def test_examples(self, p4, c4, k3):
        assert mhull(p4, vs(p4, "a,c")) == vs(p4, "a,b,c")
        assert mhull(c4, vs(c4, "a,c")) == c4.full_set()
        assert mhull(k3, vs(k3, "a,b")) == vs(k3, "a,b")

    def test_closure_operator_properties(self, canonical_graphs):
        for g in canonical_graphs.values():
            for mask in range(1 << g.n):
                s = VertexSet(g.n, mask)
                h = mhull(g, s)
                assert s <= h
                assert mhull(g, h) == h
                assert is_mconvex(g, h)

    def test_monotone(self, canonical_graphs):
        rng = random.Random(11)
        for g in canonical_graphs.values():
            for _ in range(50):
                a = rng.randrange(1 << g.n)
                b = a | rng.randrange(1 << g.n)
                ha = mhull(g, VertexSet(g.n, a))
                hb = mhull(g, VertexSet(g.n, b))
                assert ha <= hb

    def test_oracle_equivalence_exhaustive(self, canonical_graphs, bowtie, diamond):
        graphs = list(canonical_graphs.values()) + [bowtie, diamond]
        for g in graphs:
            for mask in range(1 << g.n):
                s = VertexSet(g.n, mask)
                assert mhull(g, s) == hull_closure_bruteforce(g, s)

    def test_oracle_equivalence_random_graphs(self):
        rng = random.Random(5)
        for i in range(12):
            g = generate("gnp-connected", n=8, p=0.25 + 0.05 * (i % 5), seed=50 + i)
            for _ in range(60):
                s = VertexSet(g.n, rng.randrange(1 << g.n))
                assert mhull(g, s) == hull_closure_bruteforce(g, s)


class TestShadow:
    def test_examples(self, c4, p4):
        assert shadow(c4, vs(c4, "a"), vs(c4, "b")) == vs(c4, "a,d")
        assert shadow(p4, vs(p4, "a"), vs(p4, "b")) == vs(p4, "a")
        assert shadow(p4, vs(p4, "b"), vs(p4, "a")) == vs(p4, "b,c,d")

    def test_contains_first_argument(self, canonical_graphs):
        rng = random.Random(23)
        for g in canonical_graphs.values():
            for _ in range(40):
                a = rng.randrange(1, 1 << g.n)
                b = rng.randrange(1, 1 << g.n)
                sa, sb = VertexSet(g.n, a), VertexSet(g.n, b)
                assert sa <= shadow(g, sa, sb)

    def test_definition_against_hull(self, canonical_graphs):
        # x in A/B  iff  hull(B + x) meets A
        for g in canonical_graphs.values():
            rng = random.Random(g.n)
            for _ in range(25):
                a = rng.randrange(1, 1 << g.n)
                b = rng.randrange(1, 1 << g.n)
                sa, sb = VertexSet(g.n, a), VertexSet(g.n, b)
                got = shadow(g, sa, sb)
                for x in range(g.n):
                    want = bool(mhull(g, sb.add(x)).mask & sa.mask)
                    assert (x in got) == want

    def test_empty_input(self, p4):
        with pytest.raises(EmptyInput):
            shadow(p4, p4.empty_set(), vs(p4, "a"))


class TestShadowClosure:
    def test_examples(self, c4, p4, c5):
        assert shadow_closure(c4, vs(c4, "a"), vs(c4, "b")) == (
            vs(c4, "a,d"),
            vs(c4, "b,c"),
        )
        assert shadow_closure(p4, vs(p4, "b"), vs(p4, "c")) == (
            vs(p4, "a,b"),
            vs(p4, "c,d"),
        )
        astar, bstar = shadow_closure(c5, vs(c5, "v1"), vs(c5, "v3"))
        assert astar.mask & bstar.mask

    def test_fixpoint_property(self, canonical_graphs):
        rng = random.Random(31)
        for g in canonical_graphs.values():
            for _ in range(30):
                a = rng.randrange(1, 1 << g.n)
                b = rng.randrange(1, 1 << g.n)
                astar, bstar = shadow_closure(g, VertexSet(g.n, a), VertexSet(g.n, b))
                assert mhull(g, shadow(g, astar, bstar)) == astar
                assert mhull(g, shadow(g, bstar, astar)) == bstar


class TestMakeClosedPair:
    def test_k3(self, k3):
        astar, bstar = shadow_closure(k3, vs(k3, "a"), vs(k3, "b"))
        pair = make_closed_pair(k3, astar, bstar)
        assert pair.A == vs(k3, "a") and pair.B == vs(k3, "b")
        assert pair.R == vs(k3, "c") and pair.boundary_r == vs(k3, "c")

    def test_c4(self, c4):
        astar, bstar = shadow_closure(c4, vs(c4, "a"), vs(c4, "b"))
        pair = make_closed_pair(c4, astar, bstar)
        assert pair.A == vs(c4, "a,d") and pair.B == vs(c4, "b,c")
        assert not pair.R

    def test_c5_inseparable(self, c5):
        astar, bstar = shadow_closure(c5, vs(c5, "v1"), vs(c5, "v3"))
        assert make_closed_pair(c5, astar, bstar) is None

    def test_not_fixpoint(self, c4):
        with pytest.raises(NotFixpoint):
            make_closed_pair(c4, vs(c4, "a"), vs(c4, "b"))


class TestImprints:
    def test_p4_blocks(self, p4):
        imp_a, imp_b = imprints(p4, vs(p4, "a,b"), vs(p4, "c,d"))
        assert imp_a == vs(p4, "b") and imp_b == vs(p4, "c")

    def test_singletons(self, k4, p4):
        assert imprints(k4, vs(k4, "1"), vs(k4, "3")) == (vs(k4, "1"), vs(k4, "3"))
        assert imprints(p4, vs(p4, "a"), vs(p4, "d")) == (vs(p4, "a"), vs(p4, "d"))

    def test_nonempty_cliques(self, canonical_graphs, bowtie, diamond):
        graphs = list(canonical_graphs.values()) + [bowtie, diamond]
        for g in graphs:
            for h in halfspaces_bruteforce(g):
                comp = h.complement()
                if not h or not comp:
                    continue
                imp_a, imp_b = imprints(g, h, comp)
                assert imp_a and imp_b
                assert is_clique(g, imp_a) and is_clique(g, imp_b)

    def test_bad_input(self, p4):
        with pytest.raises(BadInput):
            imprints(p4, vs(p4, "a"), vs(p4, "a,b"))
        with pytest.raises(BadInput):
            imprints(p4, p4.empty_set(), vs(p4, "a"))


class TestHullSetGreedy:
    def test_examples(self, p4, k3, c4):
        assert hull_set_greedy(p4) == vs(p4, "a,d")
        assert hull_set_greedy(k3) == k3.full_set()
        got = hull_set_greedy(c4)
        assert len(got) == 2 and mhull(c4, got) == c4.full_set()

    def test_minimality(self, canonical_graphs, bowtie, diamond):
        graphs = list(canonical_graphs.values()) + [bowtie, diamond]
        for g in graphs:
            s = hull_set_greedy(g)
            assert mhull(g, s) == g.full_set()
            for v in s:
                if len(s) > 1:
                    assert mhull(g, s.remove(v)) != g.full_set()
