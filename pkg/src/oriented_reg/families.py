"""Generators for the graph families with closed-form regularity.

Vertex names follow one scheme per family so that parameters can refer to
positions: paths use ``x0..xn``, cycles ``x1..xn``, dumbbells
``x1..xn, p1..p(r-1), y1..ym``, joins ``x1..xn, y1..ym`` and m-partite
graphs ``v{i}_{t}`` for vertex ``t`` of part ``i``.

Weights may be given as one int for every vertex, as a sequence in vertex
order, or as a mapping from names. Omitted weights are 1, and sources end
up with weight 1 whatever is requested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    BadCrossEdge,
    BadParameters,
    DuplicateChord,
    InfeasibleSinkPlacement,
    LengthMismatch,
    TooFewParts,
)
from .graph import WeightedOrientedGraph

Weights = Union[int, Sequence[int], Mapping[str, int], None]


def _weights(vertices: Sequence[str], weights: Weights) -> dict[str, int]:
    if weights is None:
        return {}
    if isinstance(weights, int):
        return {v: weights for v in vertices}
    if isinstance(weights, Mapping):
        unknown = set(weights) - set(vertices)
        if unknown:
            raise BadParameters(f"weights name unknown vertices {sorted(unknown)}")
        return dict(weights)
    weights = list(weights)
    if len(weights) != len(vertices):
        raise LengthMismatch(f"{len(weights)} weights for {len(vertices)} vertices")
    return dict(zip(vertices, weights))


def _cycle_edges(names: Sequence[str]) -> list[tuple[str, str]]:
    return [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]


def naturally_oriented_path(n: int, weights: Weights = None) -> WeightedOrientedGraph:
    """x0 -> x1 -> ... -> xn."""
    if n < 1:
        raise BadParameters(f"a path needs at least one edge, got length {n}")
    names = [f"x{i}" for i in range(n + 1)]
    edges = [(names[i], names[i + 1]) for i in range(n)]
    return WeightedOrientedGraph(names, _weights(names, weights), edges)


def naturally_oriented_cycle(n: int, weights: Weights = None) -> WeightedOrientedGraph:
    """x1 -> x2 -> ... -> xn -> x1."""
    if n < 3:
        raise BadParameters(f"a cycle needs length at least 3, got {n}")
    names = [f"x{i}" for i in range(1, n + 1)]
    return WeightedOrientedGraph(names, _weights(names, weights), _cycle_edges(names))


def dumbbell(n: int, m: int, r: int, weights: Weights = None) -> WeightedOrientedGraph:
    """Cycles on x and y joined by a path from x1 to y1 of length r.

    Both cycles run forward and the path points from the x-cycle to the
    y-cycle. Edges are declared cycle by cycle and the path last, so the
    closing edge (ym, y1) precedes the path's final edge into y1.
    """
    if n < 3 or m < 3 or r < 1:
        raise BadParameters(f"dumbbell needs n, m >= 3 and r >= 1, got {n}, {m}, {r}")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}" for i in range(1, m + 1)]
    ps = [f"p{i}" for i in range(1, r)]
    names = xs + ps + ys
    chain = [xs[0], *ps, ys[0]]
    edges = _cycle_edges(xs) + _cycle_edges(ys) + list(zip(chain, chain[1:]))
    return WeightedOrientedGraph(names, _weights(names, weights), edges)


def _orient(pair: tuple[str, str], orientation: str, rank: Mapping[str, int]) -> tuple[str, str]:
    a, b = pair
    if orientation == "given":
        return a, b
    low, high = sorted((a, b), key=rank.__getitem__)
    if orientation == "low-tail":
        return low, high
    if orientation == "high-tail":
        return high, low
    raise BadParameters(f"unknown orientation {orientation!r}")


def _name(v, prefix: str) -> str:
    return f"{prefix}{v}" if isinstance(v, int) else str(v)


def all_chords(n: int) -> list[tuple[int, int]]:
    """Every diagonal of C_n as a low-to-high index pair."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1) if not (i == 1 and j == n)]


def cycle_with_chords(
    n: int,
    chords: Iterable[Sequence],
    weights: Weights = None,
    orientation: str = "low-tail",
) -> WeightedOrientedGraph:
    """Forward cycle on x1..xn plus diagonals.

    A chord ``(i, j)`` names ``x_i`` and ``x_j`` by index or by name. The
    default ``orientation`` points each chord from its lower-index end;
    ``"high-tail"`` reverses that and ``"given"`` keeps ``i -> j``.
    """
    base = naturally_oriented_cycle(n, weights)
    names = list(base.vertices)
    rank = {v: k for k, v in enumerate(names)}
    cycle_pairs = {frozenset(e) for e in base.edges}
    seen: set[frozenset[str]] = set()
    extra = []
    for c in chords:
        a, b = (_name(c[0], "x"), _name(c[1], "x"))
        if a not in rank or b not in rank or a == b:
            raise BadParameters(f"chord {tuple(c)} does not join two distinct cycle vertices")
        key = frozenset((a, b))
        if key in cycle_pairs:
            raise DuplicateChord(f"chord {a}-{b} is a cycle edge")
        if key in seen:
            raise DuplicateChord(f"chord {a}-{b} is repeated")
        seen.add(key)
        extra.append(_orient((a, b), orientation, rank))
    return WeightedOrientedGraph(names, _weights(names, weights), list(base.edges) + extra)


def join_of_cycles(
    n: int,
    m: int,
    cross_edges: Iterable[Sequence] | str = "all",
    weights: Weights = None,
    orientation: str = "low-tail",
) -> WeightedOrientedGraph:
    """Forward cycles on x1..xn and y1..ym plus edges between them.

    A cross edge ``(i, j)`` joins ``x_i`` and ``y_j`` (ints) or two named
    vertices. ``"all"`` adds all ``n*m`` of them. The default orientation
    points from the x side; ``"high-tail"`` points from y, ``"given"``
    keeps the listed order.
    """
    if n < 3 or m < 3:
        raise BadParameters(f"cycles need length at least 3, got {n} and {m}")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}" for i in range(1, m + 1)]
    names = xs + ys
    rank = {v: k for k, v in enumerate(names)}
    if cross_edges == "all":
        cross_edges = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    seen: set[frozenset[str]] = set()
    extra = []
    for c in cross_edges:
        a = _name(c[0], "x")
        b = _name(c[1], "y")
        if a not in rank or b not in rank:
            raise BadCrossEdge(f"cross edge {tuple(c)} names an unknown vertex")
        if (a in xs) == (b in xs):
            raise BadCrossEdge(f"cross edge {a}-{b} stays inside one cycle")
        key = frozenset((a, b))
        if key in seen:
            raise BadCrossEdge(f"cross edge {a}-{b} is repeated")
        seen.add(key)
        extra.append(_orient((a, b), orientation, rank))
    if not extra:
        raise BadParameters("a join needs at least one cross edge")
    edges = _cycle_edges(xs) + _cycle_edges(ys) + extra
    return WeightedOrientedGraph(names, _weights(names, weights), edges)


def complete_mpartite(
    part_sizes: Sequence[int], weights: Weights = None
) -> tuple[WeightedOrientedGraph, WeightedOrientedGraph]:
    """Blocks V_i -> V_(i+1) cyclically, and a spanning subgraph with one in-edge per vertex.

    The subgraph matches V_i to V_(i+1) index by index; when V_(i+1) is the
    larger part its extra vertices all receive an edge from the first vertex
    of V_i.
    """
    m = len(part_sizes)
    if m < 3:
        raise TooFewParts(f"need at least 3 parts, got {m}")
    if any(s < 1 for s in part_sizes):
        raise BadParameters("every part needs at least one vertex")
    parts = [[f"v{i}_{t}" for t in range(1, s + 1)] for i, s in enumerate(part_sizes, start=1)]
    names = [v for p in parts for v in p]
    ws = _weights(names, weights)
    full, spanning = [], []
    for i in range(m):
        src, dst = parts[i], parts[(i + 1) % m]
        full.extend((u, v) for u in src for v in dst)
        k = min(len(src), len(dst))
        spanning.extend(zip(src[:k], dst[:k]))
        spanning.extend((src[0], v) for v in dst[k:])
    return (
        WeightedOrientedGraph(names, ws, full),
        WeightedOrientedGraph(names, ws, spanning),
    )


def _sink_weights(names: Sequence[str], vplus, weights, what: str) -> dict[str, int]:
    heavy = [_name(v, "x") for v in vplus]
    for v in heavy:
        if v not in names:
            raise BadParameters(f"{v} is not a vertex of the {what}")
    if len(set(heavy)) != len(heavy):
        raise BadParameters("heavy vertices are repeated")
    if weights is None:
        weights = 2
    if isinstance(weights, int):
        ws = {v: weights for v in heavy}
    elif isinstance(weights, Mapping):
        ws = {_name(k, "x"): w for k, w in weights.items()}
        if set(ws) != set(heavy):
            raise BadParameters("weights must cover exactly the heavy vertices")
    else:
        weights = list(weights)
        if len(weights) != len(heavy):
            raise LengthMismatch(f"{len(weights)} weights for {len(heavy)} heavy vertices")
        ws = dict(zip(heavy, weights))
    if any(w < 2 for w in ws.values()):
        raise BadParameters("heavy vertices need weight at least 2")
    return ws


def _sink_orient(a: str, b: str, heavy: set[str]) -> tuple[str, str]:
    if a in heavy and b in heavy:
        raise InfeasibleSinkPlacement(f"adjacent heavy vertices {a} and {b} cannot both be sinks")
    if a in heavy:
        return b, a
    return a, b


def sink_path(n: int, vplus: Iterable = (), weights=None) -> WeightedOrientedGraph:
    """Path x0..xn whose heavy vertices are sinks; other edges run left to right.

    ``vplus`` lists heavy vertices by index or name; ``weights`` gives their
    weights (one int, a list aligned with ``vplus`` or a mapping).
    """
    if n < 1:
        raise BadParameters(f"a path needs at least one edge, got length {n}")
    names = [f"x{i}" for i in range(n + 1)]
    ws = _sink_weights(names, vplus, weights, "path")
    heavy = set(ws)
    edges = [_sink_orient(names[i], names[i + 1], heavy) for i in range(n)]
    return WeightedOrientedGraph(names, ws, edges)


def sink_cycle(n: int, vplus: Iterable = (), weights=None) -> WeightedOrientedGraph:
    """Cycle x1..xn whose heavy vertices are sinks; other edges run forward."""
    if n < 3:
        raise BadParameters(f"a cycle needs length at least 3, got {n}")
    names = [f"x{i}" for i in range(1, n + 1)]
    ws = _sink_weights(names, vplus, weights, "cycle")
    heavy = set(ws)
    edges = [_sink_orient(a, b, heavy) for a, b in _cycle_edges(names)]
    return WeightedOrientedGraph(names, ws, edges)


def random_property_p(seed: int = 0, vertex_count: int = 5, weight_cap: int = 3) -> WeightedOrientedGraph:
    """Random graph with property P and at least one edge.

    Each vertex gets at most one in-edge (a random in-forest, sometimes
    closed into a cycle through v0), then weight-1 vertices that break the
    leaf clause are made heavier. With ``weight_cap < 2`` the offending
    in-edge is dropped instead.
    """
    if vertex_count < 2:
        raise BadParameters("need at least 2 vertices")
    if weight_cap < 1:
        raise BadParameters("weight cap must be at least 1")
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(vertex_count)]
    parent: dict[str, str] = {names[1]: names[0]}
    for j in range(2, vertex_count):
        if rng.random() < 0.85:
            parent[names[j]] = names[rng.randrange(j)]
    if vertex_count >= 3 and rng.random() < 0.3:
        # an edge back into v0 from a child of v0 would make a 2-cycle
        far = [v for v in names[1:] if parent.get(v) != names[0]]
        if far:
            parent[names[0]] = rng.choice(far)
    weights = {v: rng.randint(1, weight_cap) for v in names}
    while True:
        D = WeightedOrientedGraph(names, weights, [(p, c) for c, p in parent.items()])
        rep = D.property_p()
        if rep.holds:
            return D
        x = rep.vertex
        if weight_cap >= 2:
            weights[x] = rng.randint(2, weight_cap)
        elif len(parent) > 1:
            del parent[x]
        else:
            raise AssertionError("a single edge always has property P")


# named families for the CLI and sweeps


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its parameters; ``build()`` makes the graph."""

    family: str
    params: Mapping[str, object] = field(default_factory=dict)

    def build(self) -> WeightedOrientedGraph:
        try:
            maker = FAMILIES[self.family]
        except KeyError:
            raise BadParameters(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}") from None
        return maker(**self.params)

    def label(self) -> str:
        inner = ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.family}({inner})"


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ":".join(_fmt(x) for x in v)
    return str(v)


def _mpartite_full(parts, weights=None):
    return complete_mpartite(parts, weights)[0]


def _mpartite_spanning(parts, weights=None):
    return complete_mpartite(parts, weights)[1]


FAMILIES = {
    "path": lambda n, weights=None: naturally_oriented_path(n, weights),
    "cycle": lambda n, weights=None: naturally_oriented_cycle(n, weights),
    "dumbbell": lambda n, m, r=1, weights=None: dumbbell(n, m, r, weights),
    "cycle-chords": lambda n, chords=(), weights=None, orientation="low-tail": cycle_with_chords(
        n, chords, weights, orientation
    ),
    "join-cycles": lambda n, m, cross="all", weights=None, orientation="low-tail": join_of_cycles(
        n, m, cross, weights, orientation
    ),
    "mpartite": _mpartite_full,
    "mpartite-spanning": _mpartite_spanning,
    "sink-path": lambda n, vplus=(), weights=None: sink_path(n, vplus, weights),
    "sink-cycle": lambda n, vplus=(), weights=None: sink_cycle(n, vplus, weights),
    "random-p": lambda seed=0, vertices=5, wmax=3: random_property_p(seed, vertices, wmax),
}


_LIST_KEYS = {"parts", "vplus", "chords", "cross"}
_PAIR_KEYS = {"chords", "cross"}


def _atom(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _item(text: str):
    if "-" in text[1:]:
        return tuple(_atom(p) for p in text.split("-"))
    return _atom(text)


def parse_params(text: str) -> dict[str, object]:
    """Parse ``k=v,k=v``; ``:`` separates list items and ``-`` joins a pair.

    ``weights=2`` is one weight for all, ``weights=1:2:1`` a list;
    ``chords=1-3:2-4`` is a list of pairs; ``cross=all`` is kept as a word.
    """
    out: dict[str, object] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise BadParameters(f"parameter {part!r} is not of the form key=value")
        key, value = (t.strip() for t in part.split("=", 1))
        parse = _item if key in _PAIR_KEYS else _atom
        items = [parse(t) for t in value.split(":") if t]
        if key == "cross" and value == "all":
            out[key] = "all"
        elif key in _LIST_KEYS or ":" in value:
            out[key] = items
        else:
            out[key] = items[0] if items else ""
    return out
