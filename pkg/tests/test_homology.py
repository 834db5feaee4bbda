import itertools

import pytest
from hypothesis import given, settings

from oriented_reg.errors import NotAPartition, NotSquarefree, TooLarge, UnitIdeal, ZeroIdeal
from oriented_reg.families import naturally_oriented_cycle, naturally_oriented_path
from oriented_reg.homology import (
    SimplicialComplex,
    betti_splitting_check,
    graded_betti,
    has_linear_resolution,
    polarized_variable_count,
    reduced_homology_ranks,
    regularity_oracle,
    splitting_condition_check,
    stanley_reisner_complex,
)
from oriented_reg.monomial import Monomial, MonomialIdeal, edge_ideal, polarize

from strategies import monomial_ideals, squarefree_ideals

I = MonomialIdeal.parse


def test_stanley_reisner_examples():
    K = stanley_reisner_complex(I("(a*b)"))
    assert K.faces == {0b00, 0b01, 0b10}
    tri = stanley_reisner_complex(edge_ideal(naturally_oriented_cycle(3)))
    assert tri.faces == {0, 1, 2, 4}
    full = stanley_reisner_complex(MonomialIdeal([], ["a", "b", "c"]))
    assert len(full.faces) == 8
    with pytest.raises(NotSquarefree):
        stanley_reisner_complex(I("(a^2)"))


def test_reduced_homology_examples():
    assert reduced_homology_ranks(SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)])) == [0, 0, 1]
    assert reduced_homology_ranks(SimplicialComplex.from_facets(2, [(0,), (1,)])) == [0, 1]
    assert reduced_homology_ranks(SimplicialComplex(0, frozenset({0}))) == [1]


def test_complex_must_be_closed():
    with pytest.raises(ValueError):
        SimplicialComplex(2, frozenset({0, 3}))


@pytest.mark.parametrize("field", ["gf2", "qq"])
def test_betti_principal(field):
    t = graded_betti(I("(a*b)"), field)
    assert t.entries == {(0, 2): 1} and t.regularity == 2


@pytest.mark.parametrize("field", ["gf2", "qq"])
def test_betti_two_quadrics(field):
    t = graded_betti(I("(a*b, b*c)"), field)
    assert t.entries == {(0, 2): 2, (1, 3): 1}
    assert t.regularity == 2 and t.projective_dimension == 1


def test_betti_path_and_cycle():
    assert graded_betti(edge_ideal(naturally_oriented_path(4))).regularity == 3
    assert regularity_oracle(edge_ideal(naturally_oriented_cycle(5))) == 3


def test_regularity_examples():
    assert regularity_oracle(I("(x0^2*x1, x1*x2, x2*x3^2)")) == 3
    assert regularity_oracle(I("(x^5)")) == 5
    assert regularity_oracle(I("(x1*x2^2, x3*x2^2, x3*x1)")) == 3


def test_quotient_convention_and_rendering():
    t = graded_betti(I("(a*b, b*c)"))
    q = t.to_quotient()
    assert q.entries == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert q.regularity == t.regularity - 1 and q.to_ideal() == t
    assert t.to_csv() == "i,j,beta\r\n0,2,2\r\n1,3,1\r\n"
    assert t.macaulay_str().splitlines()[1:] == ["total: 2 1", "    2: 2 1"]


def test_cap_and_degenerate_inputs():
    big = I("(x1^5*x2^5, x3^5*x4^5)")
    assert polarized_variable_count(big) == 20
    with pytest.raises(TooLarge):
        graded_betti(big)
    assert graded_betti(big, max_vars=None).regularity == 19
    with pytest.raises(ZeroIdeal):
        graded_betti(MonomialIdeal([]))
    with pytest.raises(UnitIdeal):
        graded_betti(I("(1)"))
    with pytest.raises(ValueError):
        graded_betti(I("(a)"), "gf3")


def test_parallel_sweep_matches_serial():
    ideal = edge_ideal(naturally_oriented_cycle(5, 2))
    for reduce in (True, False):
        serial = graded_betti(ideal, "qq", reduce=reduce)
        assert graded_betti(ideal, "qq", reduce=reduce, workers=3).entries == serial.entries


@pytest.mark.parametrize("w3", [2, 3])
def test_betti_splitting_base_case(w3):
    J = MonomialIdeal([Monomial({"x2": 1, "x3": w3})])
    K = I("(x0*x1, x1*x2)")
    assert betti_splitting_check(J + K, J, K).holds
    assert has_linear_resolution(J)


def test_betti_splitting_degenerate():
    J = I("(a*b, b*c)")
    with pytest.raises(NotAPartition):
        betti_splitting_check(J, J, MonomialIdeal([]))
    with pytest.raises(NotAPartition):
        betti_splitting_check(J, I("(a*b)"), I("(c*d)"))


def test_betti_splitting_failure_is_located():
    # (ab, cd) is split as J=(ab), K=(cd): fine; (ab, bc, cd) split at the middle is not
    I3 = I("(a*b, b*c, c*d)")
    report = betti_splitting_check(I3, I("(a*b, c*d)"), I("(b*c)"))
    assert not report.holds and report.violations
    i, j, actual, predicted = report.violations[0]
    assert actual != predicted


def test_linear_resolution_examples():
    assert not has_linear_resolution(I("(a*b, c*d)"))
    assert has_linear_resolution(I("(a*b, a*c)"))
    J, K, ok = splitting_condition_check(I("(x0*x1, x1*x2, x2*x3^2)"), "x3")
    assert J == I("(x2*x3^2)") and K == I("(x0*x1, x1*x2)") and ok


def _k_polynomial_from_faces(ideal):
    """Coefficients of sum over faces F of t^|F| (1-t)^(n-|F|)."""
    K = stanley_reisner_complex(ideal)
    n = K.vertex_count
    coeffs = [0] * (n + 1)
    for f in K.faces:
        k = bin(f).count("1")
        for r in range(n - k + 1):
            sign = -1 if r % 2 else 1
            coeffs[k + r] += sign * _binom(n - k, r)
    return coeffs


def _binom(n, r):
    out = 1
    for k in range(r):
        out = out * (n - k) // (k + 1)
    return out


@settings(max_examples=80, deadline=None)
@given(squarefree_ideals())
def test_betti_numbers_match_hilbert_series(ideal):
    # an independent count: the alternating Betti sum is the K-polynomial
    if ideal.is_unit():
        return
    table = graded_betti(ideal).to_quotient()
    n = len(ideal.variables)
    alt = [0] * (n + 1)
    for (i, j), b in table.entries.items():
        alt[j] += (-1) ** i * b
    assert alt == _k_polynomial_from_faces(ideal)


@settings(max_examples=60, deadline=None)
@given(monomial_ideals())
def test_routes_and_fields_agree(ideal):
    reduced = graded_betti(ideal, "gf2", reduce=True)
    plain = graded_betti(ideal, "gf2", reduce=False)
    assert reduced.entries == plain.entries
    assert graded_betti(ideal, "qq").entries == reduced.entries


@settings(max_examples=60, deadline=None)
@given(monomial_ideals())
def test_polarization_preserves_betti_numbers(ideal):
    P, _ = polarize(ideal)
    assert graded_betti(P, reduce=False).entries == graded_betti(ideal).entries


@settings(max_examples=60, deadline=None)
@given(monomial_ideals())
def test_ideal_and_quotient_regularity_offset(ideal):
    t = graded_betti(ideal)
    assert t.regularity == t.to_quotient().regularity + 1
    assert t.regularity >= max(g.degree for g in ideal.generators)
