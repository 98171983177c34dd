import pytest

from monoconv.graphs import load_graph

K3_TEXT = "a b\nb c\nc a\n"
P4_TEXT = "a b\nb c\nc d\n"
C4_TEXT = "a b\nb c\nc d\nd a\n"
C5_TEXT = "v1 v2\nv2 v3\nv3 v4\nv4 v5\nv5 v1\n"
K4_TEXT = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"
# two triangles sharing the cut vertex w
BOWTIE_TEXT = "a b\nb w\nw a\nw x\nx y\ny w\n"
# K4 minus one edge (3-4 missing)
DIAMOND_TEXT = "1 2\n1 3\n1 4\n2 3\n2 4\n"
# K5 minus the two edges v0-v2 and v1-v2; the family across edge (v0, v3)
# is the chain {v0} < {v0,v1} < {v0,v1,v4} (ordered-block decomposition)
QUASI5_TEXT = "v0 v1\nv0 v3\nv0 v4\nv1 v3\nv1 v4\nv2 v3\nv2 v4\nv3 v4\n"


@pytest.fixture(scope="session")
def k3():
    return load_graph(K3_TEXT)


@pytest.fixture(scope="session")
def p4():
    return load_graph(P4_TEXT)


@pytest.fixture(scope="session")
def c4():
    return load_graph(C4_TEXT)


@pytest.fixture(scope="session")
def c5():
    return load_graph(C5_TEXT)


@pytest.fixture(scope="session")
def k4():
    return load_graph(K4_TEXT)


@pytest.fixture(scope="session")
def bowtie():
    return load_graph(BOWTIE_TEXT)


@pytest.fixture(scope="session")
def diamond():
    return load_graph(DIAMOND_TEXT)


@pytest.fixture(scope="session")
def quasi5():
    return load_graph(QUASI5_TEXT)


@pytest.fixture(scope="session")
def canonical_graphs(k3, p4, c4, c5, k4):
    return {"K3": k3, "P4": p4, "C4": c4, "C5": c5, "K4": k4}


def vs(g, names):
    """Vertex set from an iterable of vertex names (or a comma string)."""
    if isinstance(names, str):
        names = [s for s in names.split(",") if s]
    return g.vset_names(names)
