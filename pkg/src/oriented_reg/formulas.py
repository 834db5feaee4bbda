"""Closed-form regularity of edge ideals of weighted oriented graphs.

Every formula checks its hypotheses and raises :class:`PreconditionFailed`
naming the failed predicate. Results carry both conventions:
``reg_ideal = reg(I(D))`` and ``reg_quotient = reg(R/I(D)) = reg_ideal - 1``.

Weights are always read after source normalization, so a vertex with no
in-edges counts as weight 1 wherever it sits. Isolated vertices contribute
nothing to any weight sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    EmptyEdgeSet,
    GraphError,
    LengthTooSmall,
    NoApplicableMethod,
    NonPositiveLength,
    NotASinkPath,
    OverlappingComponents,
    PreconditionFailed,
    SearchBudgetExceeded,
    TooLarge,
)
from .graph import WeightedOrientedGraph

Edge = tuple[str, str]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class RegularityResult:
    reg_ideal: int
    method: str
    checks: tuple[Check, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def reg_quotient(self) -> int:
        return self.reg_ideal - 1

    def to_dict(self) -> dict:
        return {
            "reg_ideal": self.reg_ideal,
            "reg_quotient": self.reg_quotient,
            "method": self.method,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "notes": list(self.notes),
        }


# method tags
PROPERTY_P = "property-p"
ADDED_EDGES = "added-edges"
LEAF_IN_EDGES = "leaf-in-edges"
COMPONENT_STARS = "component-stars"
SINK_PATH_T2 = "sink-path-t2"
SINK_PATH_T1 = "sink-path-t1"
SINK_CYCLE_01 = "sink-cycle-0-1-mod-3"
SINK_CYCLE_2 = "sink-cycle-2-mod-3"
ORACLE = "oracle"


# underlying graphs


def reg_path_underlying(n: int) -> int:
    """reg(I(P_n)) for the path with ``n`` edges."""
    if n < 1:
        raise NonPositiveLength(f"path length must be at least 1, got {n}")
    return (n + 2) // 3 + 1


def reg_cycle_underlying(n: int) -> int:
    """reg(I(C_n)) by deleting one vertex and comparing with the path left over."""
    if n < 3:
        raise LengthTooSmall(f"cycle length must be at least 3, got {n}")
    if n in (3, 4):
        return 2
    rest = reg_path_underlying(n - 2)
    return rest if n % 3 in (0, 1) else rest + 1


def weight_excess(D: WeightedOrientedGraph) -> int:
    """Sum of weights over non-isolated vertices, minus the edge count."""
    return sum(D.weight(v) for v in D.vertices if not D.is_isolated(v)) - len(D.edges)


def _require_edges(D: WeightedOrientedGraph) -> None:
    if not D.edges:
        raise EmptyEdgeSet()


def _require_simple_underlying(D: WeightedOrientedGraph) -> None:
    pairs = D.antiparallel_pairs()
    if pairs:
        a, b = pairs[0]
        raise PreconditionFailed("orientedGraph", f"{a} and {b} are joined in both directions")


# property P


def reg_property_p(D: WeightedOrientedGraph) -> RegularityResult:
    _require_edges(D)
    report = D.property_p()
    if not report.holds:
        raise PreconditionFailed("propertyP", report.detail)
    _require_simple_underlying(D)
    q = weight_excess(D)
    return RegularityResult(q + 1, PROPERTY_P, (Check("propertyP", True),))


# adding edges among property-P components


@dataclass(frozen=True)
class AddedEdgesReport:
    holds: bool
    checks: tuple[Check, ...]

    def __bool__(self) -> bool:
        return self.holds

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)


def _owner_map(components: Sequence[WeightedOrientedGraph]) -> dict[str, int]:
    owner: dict[str, int] = {}
    for t, comp in enumerate(components):
        for v in comp.vertices:
            if v in owner:
                raise OverlappingComponents(f"vertex {v!r} lies in components {owner[v]} and {t}")
            owner[v] = t
    return owner


def check_added_edge_conditions(
    components: Sequence[WeightedOrientedGraph], new_edges: Iterable[Sequence[str]]
) -> AddedEdgesReport:
    """Each component has property P and each new edge (a, b) has
    ``w_a, w_b >= 2`` in its own component and no leaf of b's component
    among b's in-neighbours there.
    """
    owner = _owner_map(components)
    new_edges = [(str(a), str(b)) for a, b in new_edges]
    checks: list[Check] = []
    for t, comp in enumerate(components):
        rep = comp.property_p()
        checks.append(Check(f"propertyP[{t}]", rep.holds, rep.detail))
        both = comp.antiparallel_pairs()
        if both:
            a, b = both[0]
            checks.append(Check(f"orientedGraph[{t}]", False, f"{a} and {b} are joined in both directions"))
    existing = {e for comp in components for e in comp.edges}
    seen: set[Edge] = set()
    for a, b in new_edges:
        for v in (a, b):
            if v not in owner:
                raise GraphError(f"new edge ({a}, {b}) uses undeclared vertex {v!r}")
        tag = f"({a},{b})"
        fresh = (a, b) not in existing and (a, b) not in seen and a != b
        checks.append(Check(f"fresh{tag}", fresh, "" if fresh else "edge repeats or is a loop"))
        seen.add((a, b))
        ca, cb = components[owner[a]], components[owner[b]]
        wa, wb = ca.weight(a), cb.weight(b)
        checks.append(Check(f"tailWeight{tag}", wa >= 2, f"w({a}) = {wa} in its component"))
        checks.append(Check(f"headWeight{tag}", wb >= 2, f"w({b}) = {wb} in its component"))
        leaves = sorted(v for v in cb.in_neighbors(b) if cb.is_leaf(v))
        checks.append(Check(
            f"noLeafInNeighbour{tag}", not leaves,
            f"in-neighbour {leaves[0]} of {b} is a leaf of its component" if leaves else "",
        ))
    return AddedEdgesReport(all(c.ok for c in checks), tuple(checks))


def assemble(components: Sequence[WeightedOrientedGraph], new_edges: Iterable[Sequence[str]]) -> WeightedOrientedGraph:
    """Disjoint union of the components plus the new edges, keeping component weights."""
    _owner_map(components)
    verts = [v for c in components for v in c.vertices]
    weights = {v: c.weight(v) for c in components for v in c.vertices}
    edges = [e for c in components for e in c.edges] + [tuple(e) for e in new_edges]
    return WeightedOrientedGraph(verts, weights, edges)


def reg_with_added_edges(
    components: Sequence[WeightedOrientedGraph], new_edges: Iterable[Sequence[str]]
) -> RegularityResult:
    new_edges = list(new_edges)
    report = check_added_edge_conditions(components, new_edges)
    if not report.holds:
        bad = report.first_failure()
        raise PreconditionFailed(bad.name, bad.detail)
    if not any(c.edges for c in components) and not new_edges:
        raise EmptyEdgeSet()
    q = sum(weight_excess(c) for c in components)
    hyper = _simple_edge_check(assemble(components, new_edges), q)
    return RegularityResult(q + 1, ADDED_EDGES, report.checks + (hyper,))


def _simple_edge_check(D: WeightedOrientedGraph, expected: int) -> Check:
    """Confirm the sum formula through the labeled hypergraph of the polarization.

    The edge conditions alone do not force isolated simple edges: a vertex
    whose out-neighbours all receive new edges yields an extra simple edge,
    and the sum then overshoots. This check is combinatorial and cheap.
    """
    from .hypergraph import build_labeled_hypergraph
    from .monomial import edge_ideal, polarize

    H = build_labeled_hypergraph(polarize(edge_ideal(D))[0])
    if not H.has_isolated_simple_edges():
        bad = sorted(v for v in H.open_vertices() if sum(v in f for f in H.simple_edges()) != 1)
        raise PreconditionFailed(
            "isolatedSimpleEdges",
            f"generator {bad[0]} of the polarized ideal is not in exactly one simple edge",
        )
    got = H.reg_via_simple_edges()
    if got != expected:
        raise PreconditionFailed(
            "isolatedSimpleEdges", f"simple-edge count gives {got}, the component sum gives {expected}"
        )
    return Check("isolatedSimpleEdges", True, f"{len(H.simple_edges())} simple edges")


def discover_decomposition(
    D: WeightedOrientedGraph, max_edges: int = 16, max_candidates: int = 1 << 16
) -> tuple[list[WeightedOrientedGraph], list[Edge]] | None:
    """Find edges Y such that D minus Y has property-P components and Y is admissible.

    A head of an added edge must keep weight at least 2 in its component,
    so it must keep an in-edge, and property P then allows exactly one.
    Hence every vertex with in-edges keeps exactly one of them and all
    candidate sets Y have the same size; they are tried in lexicographic
    order of edge positions.
    """
    if len(D.edges) > max_edges:
        raise SearchBudgetExceeded(f"{len(D.edges)} edges exceeds the search cap of {max_edges}")
    index = {e: k for k, e in enumerate(D.edges)}
    choices = [D.in_edges(v) for v in D.vertices if D.in_degree(v)]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_candidates:
        raise SearchBudgetExceeded(f"{total} candidate edge sets exceeds {max_candidates}")
    candidates = []
    for kept in itertools.product(*choices):
        keep = set(kept)
        candidates.append(tuple(sorted(index[e] for e in D.edges if e not in keep)))
    candidates.sort()
    for ys in candidates:
        Y = [D.edges[k] for k in ys]
        comps = D.delete_edges(Y).components()
        if check_added_edge_conditions(comps, Y).holds:
            return comps, Y
    return None


# leaf in-edges at one vertex


def add_leaf_in_edges(D: WeightedOrientedGraph, x_p: str, k: int, prefix: str | None = None) -> WeightedOrientedGraph:
    """D plus ``k`` fresh vertices, each with a single edge into ``x_p``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    stem = prefix or f"{x_p}_leaf"
    fresh, i = [], 1
    while len(fresh) < k:
        name = f"{stem}{i}"
        if name not in D:
            fresh.append(name)
        i += 1
    return WeightedOrientedGraph(
        list(D.vertices) + fresh, D.weights, list(D.edges) + [(v, x_p) for v in fresh]
    )


def reg_with_leaf_in_edges(D: WeightedOrientedGraph, x_p: str, k: int) -> RegularityResult:
    """Regularity of D with ``k`` new leaves pointing into ``x_p``; independent of k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if x_p not in D:
        raise GraphError(f"unknown vertex {x_p!r}")
    rep = D.property_p()
    if not rep.holds:
        raise PreconditionFailed("propertyP", rep.detail)
    _require_simple_underlying(D)
    if D.weight(x_p) < 2:
        raise PreconditionFailed("weight", f"w({x_p}) = {D.weight(x_p)} < 2")
    checks = (Check("propertyP", True), Check("weight", True, f"w({x_p}) = {D.weight(x_p)}"))
    return RegularityResult(weight_excess(D) + 1, LEAF_IN_EDGES, checks, (f"target={x_p}", f"k={k}"))


def recognize_leaf_in_edges(D: WeightedOrientedGraph) -> tuple[WeightedOrientedGraph, str, int] | None:
    """Split D into a property-P base and extra leaf sources aimed at one vertex.

    Tries vertices in declared order; at each, every in-neighbour but one
    must be a leaf source and the remaining graph must have property P.
    """
    for p in D.vertices:
        tails = [a for a, _ in D.in_edges(p)]
        if len(tails) < 2 or D.weight(p) < 2:
            continue
        for kept in tails:
            extra = [a for a in tails if a != kept]
            if not all(D.is_leaf(a) and D.is_source(a) for a in extra):
                continue
            base = D.delete_vertices(extra)
            if base.has_property_p() and base.weight(p) >= 2:
                return base, p, len(extra)
    return None


def reg_multi_component_stars(
    components: Sequence[WeightedOrientedGraph], new_edges: Iterable[Sequence[str]]
) -> RegularityResult:
    """Sum over components of the regularity with their incoming star attached.

    New edges must join distinct components, and the edges entering any
    one component must share a head.
    """
    new_edges = [(str(a), str(b)) for a, b in new_edges]
    report = check_added_edge_conditions(components, new_edges)
    if not report.holds:
        bad = report.first_failure()
        raise PreconditionFailed(bad.name, bad.detail)
    owner = _owner_map(components)
    heads: dict[int, set[str]] = {}
    checks = list(report.checks)
    for a, b in new_edges:
        if owner[a] == owner[b]:
            raise PreconditionFailed("distinctComponents", f"({a},{b}) stays inside one component")
        heads.setdefault(owner[b], set()).add(b)
    for t, hs in heads.items():
        if len(hs) > 1:
            raise PreconditionFailed("singleTarget", f"component {t} receives edges at {sorted(hs)}")
    checks.append(Check("distinctComponents", True))
    checks.append(Check("singleTarget", True))
    total = 0
    for t, comp in enumerate(components):
        if not comp.edges:
            continue
        if t in heads:
            (b,) = heads[t]
            k = sum(1 for _, h in new_edges if h == b)
            total += reg_with_leaf_in_edges(comp, b, k).reg_quotient
        else:
            total += reg_property_p(comp).reg_quotient
    if total == 0 and not new_edges:
        raise EmptyEdgeSet()
    additive = reg_with_added_edges(components, new_edges)
    assert additive.reg_quotient == total, "per-component sum disagrees with the additive formula"
    return RegularityResult(total + 1, COMPONENT_STARS, tuple(checks))


# sink paths and cycles


@dataclass(frozen=True)
class PathClass:
    tag: str  # "T1" or "T2"
    order: tuple[str, ...]
    reversed: bool = False

    @property
    def length(self) -> int:
        return len(self.order) - 1


def _vplus_positions(order: Sequence[str], vplus: frozenset[str]) -> list[int]:
    return [i for i, v in enumerate(order) if v in vplus]


def _positional_tag(n_vertices: int, positions: Sequence[int]) -> str:
    if not positions or positions[0] != 0 or positions[-1] != n_vertices - 1:
        return "T2"
    gaps = [b - a for a, b in zip(positions, positions[1:])]
    return "T1" if gaps and all(g == 3 for g in gaps) else "T2"


def _check_sinks(D: WeightedOrientedGraph, kind: type[PreconditionFailed] | None = None) -> None:
    for v in sorted(D.v_plus()):
        if not D.is_sink(v):
            msg = f"{v} has weight {D.weight(v)} but is not a sink"
            if kind is None:
                raise PreconditionFailed("sinkCycle", msg)
            raise kind(msg)


def classify_path(D: WeightedOrientedGraph) -> PathClass:
    """T1 or T2 for a path whose heavy vertices are all sinks.

    ``order`` lists the path from the end treated as ``x_0``. For T2 paths
    of length at least 4 the far end ``x_n`` is chosen so that removing
    ``x_n``, and removing the last three vertices, both leave T2 paths;
    ``reversed`` records when the other end had to be used.
    """
    order = D.underlying().path_order()
    if order is None or len(D.edges) != len(D.vertices) - 1:
        raise NotASinkPath("underlying graph is not a path")
    _check_sinks(D, NotASinkPath)
    vplus = D.v_plus()
    tag = _positional_tag(len(order), _vplus_positions(order, vplus))
    flipped = False
    if tag == "T2" and len(order) - 1 >= 4:
        def tail_ok(seq: Sequence[str]) -> bool:
            d1, d2 = seq[:-1], seq[:-3]
            return (
                _positional_tag(len(d1), _vplus_positions(d1, vplus)) == "T2"
                and _positional_tag(len(d2), _vplus_positions(d2, vplus)) == "T2"
            )
        if not tail_ok(order):
            flipped = True
            order = tuple(reversed(order))
            assert tail_ok(order), "neither end gives T2 subpaths"
    return PathClass(tag, tuple(order), flipped)


def reg_sink_path(D: WeightedOrientedGraph, exclude: str | None = None) -> RegularityResult:
    """reg(I(P_n)) plus the weight excess of heavy vertices.

    For T1 paths one minimum-weight heavy vertex is left out of the sum;
    ``exclude`` picks which one, defaulting to the first in vertex order.
    """
    _require_edges(D)
    cls = classify_path(D)
    base = reg_path_underlying(cls.length)
    vplus = [v for v in D.vertices if v in D.v_plus()]
    checks = (Check("sinkPath", True, cls.tag),)
    if cls.tag == "T2":
        return RegularityResult(
            base + sum(D.weight(v) - 1 for v in vplus), SINK_PATH_T2, checks, (f"reversed={cls.reversed}",)
        )
    low = min(D.weight(v) for v in vplus)
    if exclude is None:
        exclude = next(v for v in vplus if D.weight(v) == low)
    elif exclude not in vplus or D.weight(exclude) != low:
        raise PreconditionFailed("minimumWeight", f"{exclude} is not a minimum-weight heavy vertex")
    value = base + sum(D.weight(v) - 1 for v in vplus if v != exclude)
    return RegularityResult(value, SINK_PATH_T1, checks, (f"excluded={exclude}",))


def reg_sink_cycle(D: WeightedOrientedGraph) -> RegularityResult:
    """reg(I(C_n)) plus the weight excess of heavy vertices, all of them sinks."""
    _require_edges(D)
    order = D.underlying().cycle_order()
    if order is None or len(D.edges) != len(D.vertices):
        raise PreconditionFailed("sinkCycle", "underlying graph is not a cycle")
    _check_sinks(D)
    n = len(order)
    value = reg_cycle_underlying(n) + sum(D.weight(v) - 1 for v in D.v_plus())
    method = SINK_CYCLE_2 if n % 3 == 2 else SINK_CYCLE_01
    return RegularityResult(value, method, (Check("sinkCycle", True, f"n={n}"),))


# dispatch


def _via_leaf_in_edges(D: WeightedOrientedGraph) -> RegularityResult:
    found = recognize_leaf_in_edges(D)
    if found is None:
        raise PreconditionFailed("leafInEdges", "no vertex receives extra leaf sources over a property-P base")
    base, p, k = found
    return reg_with_leaf_in_edges(base, p, k)


def _via_decomposition(D: WeightedOrientedGraph, max_edges: int = 16) -> RegularityResult:
    found = discover_decomposition(D, max_edges=max_edges)
    if found is None:
        raise PreconditionFailed("addedEdges", "no admissible set of removable edges")
    comps, Y = found
    res = reg_with_added_edges(comps, Y)
    return RegularityResult(res.reg_ideal, res.method, res.checks, tuple(f"added={a}->{b}" for a, b in Y))


def _via_oracle(D: WeightedOrientedGraph, field: str, max_vars: int | None, workers: int | None) -> RegularityResult:
    from .homology import regularity_oracle
    from .monomial import edge_ideal

    value = regularity_oracle(edge_ideal(D), field, max_vars=max_vars, workers=workers)
    return RegularityResult(value, ORACLE, (), (f"field={field}",))


METHOD_ALIASES = {
    "path": "sink-path",
    "cycle": "sink-cycle",
}


def _formula_for(name: str):
    return {
        PROPERTY_P: reg_property_p,
        LEAF_IN_EDGES: _via_leaf_in_edges,
        ADDED_EDGES: _via_decomposition,
        "sink-path": reg_sink_path,
        "sink-cycle": reg_sink_cycle,
    }[name]


AUTO_ORDER = (PROPERTY_P, LEAF_IN_EDGES, ADDED_EDGES, "sink-path", "sink-cycle")


def dispatch_regularity(
    D: WeightedOrientedGraph,
    allow_oracle: bool = True,
    method: str = "auto",
    field: str = "gf2",
    max_vars: int | None = 18,
    workers: int | None = None,
) -> RegularityResult:
    """Strongest applicable formula, else the oracle.

    A forced ``method`` runs only that route and lets its
    :class:`PreconditionFailed` propagate.
    """
    _require_edges(D)
    method = METHOD_ALIASES.get(method, method)
    if method == ORACLE:
        return _via_oracle(D, field, max_vars, workers)
    if method != "auto":
        try:
            fn = _formula_for(method)
        except KeyError:
            raise ValueError(f"unknown method {method!r}") from None
        return fn(D)

    tried: list[Check] = []
    for name in AUTO_ORDER:
        try:
            res = _formula_for(name)(D)
        except PreconditionFailed as exc:
            tried.append(Check(name, False, f"{exc.predicate}: {exc.detail}"))
            continue
        except SearchBudgetExceeded as exc:
            tried.append(Check(name, False, str(exc)))
            continue
        return RegularityResult(res.reg_ideal, res.method, tuple(tried) + res.checks, res.notes)
    if not allow_oracle:
        raise NoApplicableMethod("no formula applies and the oracle is disabled")
    try:
        res = _via_oracle(D, field, max_vars, workers)
    except TooLarge as exc:
        raise NoApplicableMethod(f"no formula applies and the oracle refuses: {exc}") from exc
    return RegularityResult(res.reg_ideal, res.method, tuple(tried), res.notes)
