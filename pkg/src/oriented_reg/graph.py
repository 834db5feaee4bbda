"""Weighted oriented graphs and the predicates the regularity theorems use.

A :class:`WeightedOrientedGraph` is immutable. Every construction path
(direct, induced subgraph, edge deletion) normalizes the weight of each
source vertex to 1, since the edge ideal never sees a source's weight.
Isolated vertices count as sources (and sinks), so their weight is 1 too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateEdge,
    GraphError,
    NonPositiveWeight,
    SelfLoop,
    UndeclaredVertex,
    UnknownEdge,
)

Edge = tuple[str, str]


class WeightedOrientedGraph:
    """Directed graph with positive integer vertex weights.

    Vertices are opaque strings kept in declared order. Edges keep their
    declared order too; that order drives every deterministic search.
    """

    __slots__ = ("_vertices", "_weights", "_edges", "_out", "_in", "_hash")

    def __init__(
        self,
        vertices: Iterable[str],
        weights: Mapping[str, int] | None = None,
        edges: Iterable[Sequence[str]] = (),
    ):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("vertex ids must be unique")
        declared = set(verts)
        weights = dict(weights or {})
        for v, w in weights.items():
            if v not in declared:
                raise UndeclaredVertex(f"weight given for undeclared vertex {v!r}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise NonPositiveWeight(f"weight of {v!r} must be a positive integer, got {w!r}")

        edge_list: list[Edge] = []
        seen: set[Edge] = set()
        out: dict[str, list[str]] = {v: [] for v in verts}
        inn: dict[str, list[str]] = {v: [] for v in verts}
        for e in edges:
            tail, head = (str(e[0]), str(e[1]))
            for v in (tail, head):
                if v not in declared:
                    raise UndeclaredVertex(f"edge ({tail!r}, {head!r}) uses undeclared vertex {v!r}")
            if tail == head:
                raise SelfLoop(f"self-loop at {tail!r}")
            if (tail, head) in seen:
                raise DuplicateEdge(f"duplicate edge ({tail!r}, {head!r})")
            seen.add((tail, head))
            edge_list.append((tail, head))
            out[tail].append(head)
            inn[head].append(tail)

        normalized = {}
        for v in verts:
            normalized[v] = 1 if not inn[v] else weights.get(v, 1)

        self._vertices = verts
        self._weights = normalized
        self._edges = tuple(edge_list)
        self._out = {v: tuple(ns) for v, ns in out.items()}
        self._in = {v: tuple(ns) for v, ns in inn.items()}
        self._hash = None

    # basic accessors

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def weights(self) -> dict[str, int]:
        return dict(self._weights)

    def weight(self, x: str) -> int:
        self._check(x)
        return self._weights[x]

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, x: object) -> bool:
        return x in self._weights

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedOrientedGraph):
            return NotImplemented
        return (
            set(self._vertices) == set(other._vertices)
            and self._weights == other._weights
            and set(self._edges) == set(other._edges)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (frozenset(self._weights.items()), frozenset(self._edges))
            )
        return self._hash

    def __repr__(self) -> str:
        ws = {v: w for v, w in self._weights.items() if w != 1}
        return f"WeightedOrientedGraph(vertices={list(self._vertices)}, edges={list(self._edges)}, heavy={ws})"

    def _check(self, x: str) -> None:
        if x not in self._weights:
            raise UndeclaredVertex(f"{x!r} is not a vertex")

    # neighbourhoods

    def in_neighbors(self, x: str) -> frozenset[str]:
        self._check(x)
        return frozenset(self._in[x])

    def out_neighbors(self, x: str) -> frozenset[str]:
        self._check(x)
        return frozenset(self._out[x])

    def neighbors(self, x: str) -> frozenset[str]:
        self._check(x)
        return frozenset(self._in[x]) | frozenset(self._out[x])

    def in_degree(self, x: str) -> int:
        self._check(x)
        return len(self._in[x])

    def degree(self, x: str) -> int:
        """Number of distinct neighbours; antiparallel pairs count once."""
        return len(self.neighbors(x))

    def in_edges(self, x: str) -> tuple[Edge, ...]:
        self._check(x)
        return tuple((u, x) for u in self._in[x])

    def is_leaf(self, x: str) -> bool:
        return self.degree(x) == 1

    def is_source(self, x: str) -> bool:
        self._check(x)
        return not self._in[x]

    def is_sink(self, x: str) -> bool:
        self._check(x)
        return not self._out[x]

    def is_isolated(self, x: str) -> bool:
        self._check(x)
        return not self._in[x] and not self._out[x]

    def v_plus(self) -> frozenset[str]:
        return frozenset(v for v, w in self._weights.items() if w >= 2)

    # derived graphs

    def underlying(self) -> "SimpleGraph":
        return SimpleGraph(self._vertices, self._edges)

    def induced_subgraph(self, keep: Iterable[str]) -> "WeightedOrientedGraph":
        keep = set(keep)
        for v in keep:
            self._check(v)
        verts = [v for v in self._vertices if v in keep]
        edges = [(a, b) for a, b in self._edges if a in keep and b in keep]
        return WeightedOrientedGraph(verts, {v: self._weights[v] for v in verts}, edges)

    def delete_vertices(self, drop: Iterable[str]) -> "WeightedOrientedGraph":
        drop = set(drop)
        for v in drop:
            self._check(v)
        return self.induced_subgraph(v for v in self._vertices if v not in drop)

    def delete_edges(self, remove: Iterable[Sequence[str]]) -> "WeightedOrientedGraph":
        remove = {(str(a), str(b)) for a, b in remove}
        present = set(self._edges)
        for e in remove:
            if e not in present:
                raise UnknownEdge(f"edge {e} is not in the graph")
        edges = [e for e in self._edges if e not in remove]
        return WeightedOrientedGraph(self._vertices, self._weights, edges)

    def add_edges(
        self, new: Iterable[Sequence[str]], weights: Mapping[str, int] | None = None
    ) -> "WeightedOrientedGraph":
        """Return a graph with extra edges; ``weights`` override existing ones."""
        ws = dict(self._weights)
        ws.update(weights or {})
        return WeightedOrientedGraph(self._vertices, ws, list(self._edges) + [tuple(e) for e in new])

    def with_weights(self, weights: Mapping[str, int]) -> "WeightedOrientedGraph":
        ws = dict(self._weights)
        ws.update(weights)
        return WeightedOrientedGraph(self._vertices, ws, self._edges)

    def relabel(self, mapping: Mapping[str, str]) -> "WeightedOrientedGraph":
        verts = [mapping[v] for v in self._vertices]
        return WeightedOrientedGraph(
            verts,
            {mapping[v]: w for v, w in self._weights.items()},
            [(mapping[a], mapping[b]) for a, b in self._edges],
        )

    def components(self) -> list["WeightedOrientedGraph"]:
        """Connected components of the underlying graph, in declared order."""
        return [self.induced_subgraph(c) for c in self.underlying().components()]

    # property P

    def property_p(self) -> "PropertyPReport":
        for x in self._vertices:
            if len(self._in[x]) > 1:
                return PropertyPReport(False, x, "in-degree", f"{x} has {len(self._in[x])} in-edges")
        for x in self._vertices:
            if self.is_leaf(x) or self.is_source(x):
                continue
            if self._weights[x] >= 2:
                continue
            (tail,) = self._in[x]
            if not self.is_leaf(tail):
                return PropertyPReport(
                    False, x, "weight-or-leaf",
                    f"{x} has weight 1 and its in-neighbour {tail} is not a leaf",
                )
        return PropertyPReport(True)

    def antiparallel_pairs(self) -> list[Edge]:
        """Edges (a, b) with a < b in declaration order whose reverse is also present."""
        rank = {v: k for k, v in enumerate(self._vertices)}
        present = set(self._edges)
        return [(a, b) for a, b in self._edges if (b, a) in present and rank[a] < rank[b]]

    def has_property_p(self) -> bool:
        return self.property_p().holds

    # serialization

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "weights": {v: w for v, w in self._weights.items() if w != 1},
            "edges": [list(e) for e in self._edges],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightedOrientedGraph":
        try:
            vertices = data["vertices"]
            edges = data.get("edges", [])
            weights = data.get("weights", {}) or {}
        except (KeyError, TypeError, AttributeError) as exc:
            raise GraphError(f"malformed graph object: {exc}") from None
        if not isinstance(vertices, list) or not isinstance(edges, list) or not isinstance(weights, dict):
            raise GraphError("malformed graph object")
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphError(f"edge {e!r} is not a [tail, head] pair")
        return cls(vertices, weights, edges)

    @classmethod
    def from_json(cls, text: str) -> "WeightedOrientedGraph":
        return cls.from_dict(json.loads(text))


def new_graph(vertices, weights=None, edges=()) -> WeightedOrientedGraph:
    return WeightedOrientedGraph(vertices, weights, edges)


@dataclass(frozen=True)
class PropertyPReport:
    holds: bool
    vertex: str | None = None
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


class SimpleGraph:
    """Undirected simple graph; antiparallel directed pairs collapse."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        self.vertices = tuple(vertices)
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        es = set()
        for a, b in edges:
            if a not in adj or b not in adj:
                raise UndeclaredVertex(f"edge {{{a}, {b}}} uses an undeclared vertex")
            if a == b:
                raise SelfLoop(f"self-loop at {a!r}")
            es.add(frozenset((a, b)))
            adj[a].add(b)
            adj[b].add(a)
        self.edges = frozenset(es)
        self._adj = adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edges))

    def __repr__(self) -> str:
        return f"SimpleGraph({list(self.vertices)}, {sorted(tuple(sorted(e)) for e in self.edges)})"

    def neighbors(self, x: str) -> frozenset[str]:
        return frozenset(self._adj[x])

    def degree(self, x: str) -> int:
        return len(self._adj[x])

    def induced_subgraph(self, keep: Iterable[str]) -> "SimpleGraph":
        keep = set(keep)
        verts = [v for v in self.vertices if v in keep]
        return SimpleGraph(verts, [tuple(e) for e in self.edges if e <= keep])

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            order = {x: i for i, x in enumerate(self.vertices)}
            comps.append(sorted(comp, key=order.__getitem__))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def path_order(self) -> tuple[str, ...] | None:
        """Vertices along the path from the earlier-declared end, or None."""
        n = len(self.vertices)
        if n < 2 or len(self.edges) != n - 1 or not self.is_connected():
            return None
        ends = [v for v in self.vertices if self.degree(v) == 1]
        if len(ends) != 2 or any(self.degree(v) > 2 for v in self.vertices):
            return None
        return self._walk(ends[0])

    def cycle_order(self) -> tuple[str, ...] | None:
        """Vertices around the cycle starting at the first declared vertex."""
        n = len(self.vertices)
        if n < 3 or len(self.edges) != n or not self.is_connected():
            return None
        if any(self.degree(v) != 2 for v in self.vertices):
            return None
        return self._walk(self.vertices[0])

    def _walk(self, start: str) -> tuple[str, ...]:
        order = {x: i for i, x in enumerate(self.vertices)}
        seq, seen, cur = [start], {start}, start
        while True:
            nxt = sorted((w for w in self._adj[cur] if w not in seen), key=order.__getitem__)
            if not nxt:
                return tuple(seq)
            cur = nxt[0]
            seq.append(cur)
            seen.add(cur)
