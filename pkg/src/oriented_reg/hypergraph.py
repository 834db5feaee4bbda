"""Labeled hypergraph of a squarefree monomial ideal.

Vertices ``1..mu`` are the minimal generators; each variable ``x`` maps to
the set ``E(x)`` of generators it divides, and the distinct nonempty images
are the edges. A variable's label is the edge it maps to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotSquarefree, PreconditionFailed, ZeroIdeal
from .monomial import Monomial, MonomialIdeal


@dataclass(frozen=True)
class LabeledHypergraph:
    generators: tuple[Monomial, ...]
    edge_map: dict[str, frozenset[int]]
    edges: tuple[frozenset[int], ...]
    labels: dict[frozenset[int], tuple[str, ...]]

    @property
    def vertex_count(self) -> int:
        return len(self.generators)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(1, len(self.generators) + 1))

    @property
    def X(self) -> tuple[str, ...]:
        return tuple(v for v, img in self.edge_map.items() if img)

    def is_simple(self, f: frozenset[int]) -> bool:
        return len(f) >= 2 and not any(g < f for g in self.edges)

    def simple_edges(self) -> list[frozenset[int]]:
        return [f for f in self.edges if self.is_simple(f)]

    def closed_vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if frozenset((v,)) in self.labels)

    def open_vertices(self) -> frozenset[int]:
        return self.vertices - self.closed_vertices()

    def has_isolated_simple_edges(self) -> bool:
        simple = self.simple_edges()
        return all(sum(v in f for f in simple) == 1 for v in self.open_vertices())

    def reg_via_simple_edges(self) -> int:
        """reg(R/I) = |X| - |V| + sum over simple F of (|F| - 1).

        Valid only when every open vertex lies in exactly one simple edge.
        """
        if not self.has_isolated_simple_edges():
            raise PreconditionFailed(
                "isolatedSimpleEdges", "some open vertex is not in exactly one simple edge"
            )
        return len(self.X) - self.vertex_count + sum(len(f) - 1 for f in self.simple_edges())

    def table(self, order: Sequence[str] | None = None) -> str:
        """Plain-text rendering: one row per edge with its label and flags."""
        rows = [("edge", "label", "simple", "closed")]
        for f in self.edges:
            rows.append((
                "{" + ",".join(str(v) for v in sorted(f)) + "}",
                " ".join(self.labels[f]),
                "yes" if self.is_simple(f) else "no",
                "yes" if len(f) == 1 else "",
            ))
        widths = [max(len(r[c]) for r in rows) for c in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        gens = ", ".join(
            f"{i}: {g.format(order)}" for i, g in enumerate(self.generators, start=1)
        )
        lines.insert(0, f"V = {{1..{self.vertex_count}}}  ({gens})")
        lines.insert(1, f"X = {{{', '.join(self.X)}}}")
        lines.append(f"isolated simple edges: {'yes' if self.has_isolated_simple_edges() else 'no'}")
        return "\n".join(lines)


def build_labeled_hypergraph(
    ideal: MonomialIdeal, order: Sequence[Monomial] | None = None
) -> LabeledHypergraph:
    """``order`` fixes the vertex numbering; by default the display order."""
    if ideal.is_zero():
        raise ZeroIdeal("the zero ideal has no labeled hypergraph")
    if not ideal.is_squarefree():
        raise NotSquarefree("labeled hypergraphs need a squarefree ideal")
    if order is None:
        gens = tuple(ideal.sorted_generators())
    else:
        gens = tuple(order)
        if set(gens) != set(ideal.generators) or len(gens) != len(ideal.generators):
            raise ValueError("order must list each minimal generator exactly once")

    edge_map = {
        v: frozenset(j for j, g in enumerate(gens, start=1) if g.exponent(v))
        for v in ideal.variables
    }
    labels: dict[frozenset[int], list[str]] = {}
    for v, img in edge_map.items():
        if img:
            labels.setdefault(img, []).append(v)
    edges = tuple(labels)
    return LabeledHypergraph(gens, edge_map, edges, {f: tuple(vs) for f, vs in labels.items()})
