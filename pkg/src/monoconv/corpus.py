"""Test corpora: canonical graphs, all small connected graphs, and seeded
random instances.  Used by the acceptance suite, the CLI, and reports."""

from __future__ import annotations

from .graphs import Graph, generate, load_graph

CANONICAL_TEXTS = {
    "K3": "a b\nb c\nc a\n",
    "P4": "a b\nb c\nc d\n",
    "C4": "a b\nb c\nc d\nd a\n",
    "C5": "v1 v2\nv2 v3\nv3 v4\nv4 v5\nv5 v1\n",
    "K4": "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
}


def canonical_graphs() -> dict[str, Graph]:
    return {name: load_graph(text) for name, text in CANONICAL_TEXTS.items()}


def connected_atlas(max_n: int = 6) -> list[tuple[str, Graph]]:
    """Every connected graph on 1..max_n vertices (one representative per
    isomorphism class), from the networkx graph atlas.  max_n <= 7."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for idx, gx in enumerate(graph_atlas_g()):
        n = gx.number_of_nodes()
        if n < 1 or n > max_n:
            continue
        if not nx.is_connected(gx):
            continue
        names = [f"v{i}" for i in range(n)]
        out.append((f"atlas{idx}", Graph(names, list(gx.edges()))))
    return out


def gnp_corpus(
    count: int, seed: int, n_low: int = 7, n_high: int = 10
) -> list[tuple[str, Graph]]:
    """Seeded connected G(n, p) instances with n cycling over
    [n_low, n_high] and p over a small spread."""
    ps = (0.25, 0.35, 0.5)
    out = []
    for i in range(count):
        n = n_low + i % (n_high - n_low + 1)
        p = ps[i % len(ps)]
        g = generate("gnp-connected", n=n, p=p, seed=seed + i)
        out.append((f"gnp{i}-n{n}-p{p}", g))
    return out


def acceptance_corpus(seed: int = 1, gnp_count: int = 50) -> list[tuple[str, Graph]]:
    """The default acceptance corpus: canonical graphs, every connected
    graph on at most 6 vertices, and seeded random graphs up to 10."""
    out = [(name, g) for name, g in canonical_graphs().items()]
    out.extend(connected_atlas(6))
    out.extend(gnp_corpus(gnp_count, seed))
    return out
