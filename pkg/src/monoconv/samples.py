"""Partial vertex labelings (sign vectors) and their JSON form."""

from __future__ import annotations

from .errors import ParseError
from .graphs import Graph, VertexSet


class Sample:
    """Partial labeling V -> {+1, -1, unlabeled}, stored as two disjoint
    bitmasks over 0..n-1."""

    __slots__ = ("n", "pos", "neg")

    def __init__(self, pos: VertexSet, neg: VertexSet):
        if pos.n != neg.n:
            raise ValueError("pos/neg over different vertex ranges")
        if pos.mask & neg.mask:
            raise ValueError("a vertex cannot be labeled both +1 and -1")
        object.__setattr__(self, "n", pos.n)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)

    def __setattr__(self, name, value):
        raise AttributeError("Sample is immutable")

    @classmethod
    def from_labels(cls, n: int, labels: dict[int, int]) -> "Sample":
        pos = 0
        neg = 0
        for v, y in labels.items():
            if y == 1:
                pos |= 1 << v
            elif y == -1:
                neg |= 1 << v
            else:
                raise ValueError(f"label must be +1 or -1, got {y}")
        return cls(VertexSet(n, pos), VertexSet(n, neg))

    @classmethod
    def from_named_labels(cls, g: Graph, labels: dict[str, int]) -> "Sample":
        return cls.from_labels(g.n, {g.vertex(s): y for s, y in labels.items()})

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "Sample":
        if "labels" not in data or not isinstance(data["labels"], dict):
            raise ParseError('sample JSON must be {"labels": {name: +1|-1}}')
        try:
            labels = {name: int(y) for name, y in data["labels"].items()}
        except (TypeError, ValueError):
            raise ParseError("sample labels must be integers +1 or -1") from None
        return cls.from_named_labels(g, labels)

    def to_json(self, g: Graph) -> dict:
        labels = {g.name(v): 1 for v in self.pos}
        labels.update({g.name(v): -1 for v in self.neg})
        return {"labels": {name: labels[name] for name in sorted(labels)}}

    @property
    def support(self) -> VertexSet:
        return self.pos | self.neg

    def label(self, v: int) -> int:
        if v in self.pos:
            return 1
        if v in self.neg:
            return -1
        return 0

    def drop(self, v: int) -> "Sample":
        return Sample(self.pos.remove(v), self.neg.remove(v))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Sample)
            and self.pos == other.pos
            and self.neg == other.neg
        )

    def __hash__(self) -> int:
        return hash((self.pos, self.neg))

    def __repr__(self) -> str:
        return f"Sample(+{sorted(self.pos)}, -{sorted(self.neg)})"
