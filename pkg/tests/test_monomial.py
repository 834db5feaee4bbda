import pytest
from hypothesis import given, settings

from oriented_reg.errors import ZeroIdeal
from oriented_reg.families import naturally_oriented_path, sink_path
from oriented_reg.graph import new_graph
from oriented_reg.monomial import (
    Monomial,
    MonomialIdeal,
    edge_ideal,
    ideal_colon,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    minimalize,
    polarize,
    support,
)

from strategies import monomial_ideals

M = Monomial.parse
I = MonomialIdeal.parse


def test_monomial_basics():
    m = M("a*b^3")
    assert m.degree == 4 and m.support == {"a", "b"} and not m.is_squarefree()
    assert M("1").is_unit() and M("a").divides(m) and not m.divides(M("a"))
    assert m.lcm(M("a^2*c")) == M("a^2*b^3*c") and m.gcd(M("b*c")) == M("b")
    assert str(M("b*a^2")) in ("a^2*b", "b*a^2")


def test_edge_ideal_single_edge():
    assert edge_ideal(new_graph(["a", "b"], {"b": 3}, [("a", "b")])) == I("(a*b^3)")


def test_edge_ideal_weight_one_is_graph_ideal():
    assert edge_ideal(naturally_oriented_path(3)) == I("(x0*x1, x1*x2, x2*x3)")


def test_edge_ideal_sink_heavy_ends():
    D = sink_path(3, ["x0", "x3"], [2, 3])
    assert edge_ideal(D) == I("(x0^2*x1, x1*x2, x2*x3^3)")


@pytest.mark.parametrize(
    "gens, expected",
    [(["a*b", "a*b^2"], ["a*b"]), (["a*b", "c*d"], ["a*b", "c*d"]), (["a", "a", "a^2*b"], ["a"])],
)
def test_minimalize(gens, expected):
    assert minimalize(M(g) for g in gens) == {M(g) for g in expected}


def test_polarize_single_generator():
    P, pmap = polarize(I("(a*b^3)"))
    assert P == I("(a@1*b@1*b@2*b@3)")
    assert pmap.backward("b@2") == ("b", 2)


def test_polarize_squarefree_only_first_slots():
    P, pmap = polarize(I("(a*b, b*c)"))
    assert {pmap.backward(v)[1] for v in P.variables} == {1}


def test_polarize_sink_base_case():
    P, _ = polarize(I("(x0^2*x1, x1*x2, x2*x3^2)"))
    assert P == I("(x0@1*x0@2*x1@1, x1@1*x2@1, x2@1*x3@1*x3@2)")


def test_polarize_zero_ideal_rejected():
    with pytest.raises(ZeroIdeal):
        polarize(MonomialIdeal([]))


def test_ideal_operations():
    w3 = 2
    J = MonomialIdeal([Monomial({"x2": 1, "x3": w3})])
    K = I("(x0*x1, x1*x2)")
    assert ideal_intersection(J, K) == MonomialIdeal([Monomial({"x1": 1, "x2": 1, "x3": w3})])
    assert ideal_intersection(K, K) == K
    assert ideal_colon(I("(x1*x2^2, x3*x2^2, x1*x3)"), M("x2^2")) == I("(x1, x3)")
    assert ideal_sum(I("(a)"), I("(b)")) == I("(a, b)")
    assert ideal_product(I("(a, b)"), I("(c)")) == I("(a*c, b*c)")


def test_support():
    assert support(I("(a*b^3)")) == {"a", "b"}
    assert support(MonomialIdeal([])) == frozenset()
    assert support(I("(x1*x3*x5, x1*x2*x3, x3*x4*x5, x4*x5*x6)")) == {f"x{i}" for i in range(1, 7)}


@settings(max_examples=200, deadline=None)
@given(monomial_ideals())
def test_generators_are_minimal(ideal):
    gens = list(ideal.generators)
    assert not any(a != b and a.divides(b) for a in gens for b in gens)


@settings(max_examples=200, deadline=None)
@given(monomial_ideals())
def test_polarization_is_squarefree_and_degree_preserving(ideal):
    P, pmap = polarize(ideal)
    assert P.is_squarefree() and len(P) == len(ideal)
    assert sorted(g.degree for g in P.generators) == sorted(g.degree for g in ideal.generators)
    # every slot variable maps back to a distinct (var, slot) pair
    keys = [pmap.backward(v) for v in P.variables]
    assert len(set(keys)) == len(keys)


@settings(max_examples=100, deadline=None)
@given(monomial_ideals(), monomial_ideals())
def test_intersection_membership(i, j):
    both = ideal_intersection(i, j)
    for g in both.generators:
        assert i.contains(g) and j.contains(g)
    for a in i.generators:
        for b in j.generators:
            assert both.contains(a.lcm(b))
