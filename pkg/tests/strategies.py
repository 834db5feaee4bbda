"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from oriented_reg.graph import WeightedOrientedGraph
from oriented_reg.monomial import Monomial, MonomialIdeal


@st.composite
def oriented_graphs(draw, max_vertices=6, max_weight=3, min_edges=0):
    n = draw(st.integers(2, max_vertices))
    names = [f"v{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min_edges, max_size=len(pairs)))
    edges = [(b, a) if draw(st.booleans()) else (a, b) for a, b in chosen]
    weights = {v: draw(st.integers(1, max_weight)) for v in names}
    return WeightedOrientedGraph(names, weights, edges)


@st.composite
def monomial_ideals(draw, variables=("a", "b", "c", "d"), max_gens=4, max_exp=3):
    gens = draw(st.lists(
        st.dictionaries(st.sampled_from(variables), st.integers(1, max_exp), min_size=1, max_size=len(variables)),
        min_size=1, max_size=max_gens,
    ))
    return MonomialIdeal([Monomial(g) for g in gens])


@st.composite
def squarefree_ideals(draw, n_vars=5, max_gens=5):
    names = [f"z{i}" for i in range(n_vars)]
    gens = draw(st.lists(
        st.frozensets(st.sampled_from(names), min_size=1, max_size=n_vars), min_size=1, max_size=max_gens,
    ))
    return MonomialIdeal([Monomial({v: 1 for v in g}) for g in gens], names)
