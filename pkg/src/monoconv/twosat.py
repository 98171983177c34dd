"""Generic 2-SAT engine: satisfiability, deterministic model extraction,
forced-variable detection, and equivalence classes of free variables.

Satisfiability and the model come from the implication graph and its
strongly connected components.  Forced values and variable equivalences are
defined by satisfiability probes (does a model exist with the variable, or
the pair, pinned?); the probes themselves are answered from one reachability
pass over the SCC condensation, which gives exactly the probe semantics:
with the base instance satisfiable, pinning literals l1, l2 is unsatisfiable
iff some pinned literal reaches its own negation or the negation of the
other.  Tests validate all three operations against exhaustive model
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForcedVariable, UnsatInstance

# a literal is (variable index, polarity); True means the positive literal
Lit = tuple[int, bool]


class TwoSatInstance:
    """Clause list over var_count variables, with a provenance tag per
    clause for diagnostics.  Unit constraints are encoded as (l, l).
    Treat instances as immutable once built."""

    __slots__ = ("var_count", "clauses", "tags")

    def __init__(self, var_count: int):
        self.var_count = var_count
        self.clauses: list[tuple[Lit, Lit]] = []
        self.tags: list[str] = []

    def add_clause(self, l1: Lit, l2: Lit, tag: str = ""):
        for var, _ in (l1, l2):
            if not 0 <= var < self.var_count:
                raise ValueError(f"literal variable {var} out of range")
        self.clauses.append((l1, l2))
        self.tags.append(tag)

    def add_unit(self, lit: Lit, tag: str = ""):
        self.add_clause(lit, lit, tag)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.var_count} {len(self.clauses)}"]
        for (v1, p1), (v2, p2) in self.clauses:
            a = (v1 + 1) if p1 else -(v1 + 1)
            b = (v2 + 1) if p2 else -(v2 + 1)
            lines.append(f"{a} {b} 0")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Assignment:
    values: tuple[int, ...]

    def __getitem__(self, var: int) -> int:
        return self.values[var]

    def satisfies(self, inst: TwoSatInstance) -> bool:
        for (v1, p1), (v2, p2) in inst.clauses:
            if (self.values[v1] == 1) == p1 or (self.values[v2] == 1) == p2:
                continue
            return False
        return True


def _node(var: int, positive: bool) -> int:
    return 2 * var + (0 if positive else 1)


class ImplicationAnalysis:
    """SCC condensation of the implication graph plus per-component
    reachability bitsets; answers satisfiability probes in O(1)."""

    def __init__(self, inst: TwoSatInstance):
        self.inst = inst
        n_nodes = 2 * inst.var_count
        succ: list[list[int]] = [[] for _ in range(n_nodes)]
        for (v1, p1), (v2, p2) in inst.clauses:
            # (l1 or l2) gives not-l1 -> l2 and not-l2 -> l1
            succ[_node(v1, not p1)].append(_node(v2, p2))
            succ[_node(v2, not p2)].append(_node(v1, p1))
        self.comp = self._tarjan(succ, n_nodes)
        n_comps = (max(self.comp) + 1) if n_nodes else 0
        # Tarjan numbers components in reverse topological order, so an edge
        # between components always goes from a higher to a lower id and the
        # reachability DP is complete when run in ascending id order.
        comp_succ: list[set[int]] = [set() for _ in range(n_comps)]
        for u in range(n_nodes):
            cu = self.comp[u]
            for v in succ[u]:
                cv = self.comp[v]
                if cv != cu:
                    comp_succ[cu].add(cv)
        reach = [0] * n_comps
        for c in range(n_comps):
            acc = 1 << c
            for c2 in comp_succ[c]:
                acc |= reach[c2]
            reach[c] = acc
        self.reach = reach
        self.satisfiable = all(
            self.comp[_node(v, True)] != self.comp[_node(v, False)]
            for v in range(inst.var_count)
        )

    @staticmethod
    def _tarjan(succ: list[list[int]], n_nodes: int) -> list[int]:
        index = [-1] * n_nodes
        low = [0] * n_nodes
        on_stack = [False] * n_nodes
        comp = [-1] * n_nodes
        stack: list[int] = []
        counter = 0
        n_comps = 0
        for root in range(n_nodes):
            if index[root] != -1:
                continue
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                advanced = False
                for i in range(pi, len(succ[v])):
                    w = succ[v][i]
                    if index[w] == -1:
                        work[-1] = (v, i + 1)
                        work.append((w, 0))
                        advanced = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = n_comps
                        if w == v:
                            break
                    n_comps += 1
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
        return comp

    def _reaches(self, src_node: int, dst_node: int) -> bool:
        return (self.reach[self.comp[src_node]] >> self.comp[dst_node]) & 1 == 1

    def model(self) -> Assignment | None:
        if not self.satisfiable:
            return None
        values = tuple(
            1 if self.comp[_node(v, True)] < self.comp[_node(v, False)] else 0
            for v in range(self.inst.var_count)
        )
        return Assignment(values)

    def probe(self, pins: list[Lit]) -> bool:
        """Satisfiability of the instance with the given literals pinned true."""
        if not self.satisfiable:
            return False
        nodes = [_node(v, p) for v, p in pins]
        for u in nodes:
            if self._reaches(u, u ^ 1):
                return False
        for i, u in enumerate(nodes):
            for w in nodes[i + 1 :]:
                if self._reaches(u, w ^ 1) or self._reaches(w, u ^ 1):
                    return False
        return True

    def forced(self, var: int) -> int | None:
        if not self.probe([(var, False)]):
            return 1
        if not self.probe([(var, True)]):
            return 0
        return None


def solve(inst: TwoSatInstance) -> Assignment | None:
    """Deterministic satisfying assignment, or None when unsatisfiable."""
    return ImplicationAnalysis(inst).model()


def forced_value(inst: TwoSatInstance, var: int) -> int | None:
    """1 or 0 when the variable takes that value in every model; None when
    free.  Raises UnsatInstance on unsatisfiable input."""
    analysis = ImplicationAnalysis(inst)
    if not analysis.satisfiable:
        raise UnsatInstance("instance has no models")
    return analysis.forced(var)


def equivalence_groups(
    inst: TwoSatInstance, variables: list[int]
) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Partition free variables into classes of always-equal /
    always-complementary variables, each split into its two same-valued
    groups (the second possibly empty).

    Each candidate pair is decided by the four pin probes (0,0), (0,1),
    (1,0), (1,1); memoization keeps one representative per class, so the
    probe count is linear in len(variables) times the class count.
    """
    analysis = ImplicationAnalysis(inst)
    if not analysis.satisfiable:
        raise UnsatInstance("instance has no models")
    classes: list[tuple[list[int], list[int]]] = []
    for v in variables:
        if analysis.forced(v) is not None:
            raise ForcedVariable(f"variable {v} is not free")
        placed = False
        for group1, group2 in classes:
            r = group1[0]
            if not analysis.probe([(v, True), (r, False)]) and not analysis.probe(
                [(v, False), (r, True)]
            ):
                group1.append(v)
                placed = True
                break
            if not analysis.probe([(v, True), (r, True)]) and not analysis.probe(
                [(v, False), (r, False)]
            ):
                group2.append(v)
                placed = True
                break
        if not placed:
            classes.append(([v], []))
    return [(frozenset(g1), frozenset(g2)) for g1, g2 in classes]
