import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from oriented_reg import _kernels_py, kernels
from oriented_reg.homology import SimplicialComplex, graded_betti, reduced_homology_ranks
from oriented_reg.monomial import MonomialIdeal

from strategies import squarefree_ideals

BACKENDS = kernels.available_backends()

RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def _mask(face):
    return sum(1 << v for v in face)


def _closure(facets):
    out = {0}
    for f in facets:
        for r in range(1, len(f) + 1):
            out.update(_mask(s) for s in itertools.combinations(f, r))
    return sorted(out)


@pytest.fixture(params=BACKENDS)
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


def test_compiled_backend_is_built():
    # the package is expected to ship with its extension
    assert "compiled" in BACKENDS


def test_rp2_torsion_separates_fields(backend):
    faces = _closure(RP2)
    assert kernels.reduced_homology_gf2(faces) == [0, 0, 1, 1]
    assert kernels.reduced_homology_qq(faces) == [0, 0, 0, 0]


def test_small_complexes(backend):
    assert kernels.reduced_homology_gf2([0]) == [1]
    assert kernels.reduced_homology_qq([0, 1, 2]) == [0, 1]
    circle = _closure([(0, 1), (1, 2), (0, 2)])
    assert kernels.reduced_homology_gf2(circle) == [0, 0, 1]
    assert kernels.reduced_homology_qq(circle) == [0, 0, 1]


def test_independent_sets(backend):
    # independence complex of the path a-b-c: {}, a, b, c, ac
    gens = [0b011, 0b110]
    assert sorted(kernels.independent_sets(0b111, gens)) == [0, 1, 2, 4, 5]
    assert kernels.independent_sets(0b111, [0]) == []


def test_simplicial_complex_helpers():
    K = SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)])
    assert reduced_homology_ranks(K, "gf2") == [0, 0, 1]
    assert reduced_homology_ranks(SimplicialComplex.from_facets(2, [(0,), (1,)]), "qq") == [0, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=8))
def test_backends_agree_on_random_complexes(facets):
    faces = _closure([tuple(sorted(f)) for f in facets])
    for fn in ("reduced_homology_gf2", "reduced_homology_qq"):
        results = set()
        for b in BACKENDS:
            with kernels.use_backend(b):
                results.add(tuple(getattr(kernels, fn)(faces)))
        assert len(results) == 1


@settings(max_examples=40, deadline=None)
@given(squarefree_ideals())
def test_backends_agree_on_betti_tables(ideal):
    tables = set()
    for b in BACKENDS:
        with kernels.use_backend(b):
            for field in ("gf2", "qq"):
                for reduce in (True, False):
                    tables.add((field, tuple(sorted(graded_betti(ideal, field, reduce=reduce).entries.items()))))
    # each field yields one table across backends and routes
    assert len({t for f, t in tables if f == "gf2"}) == 1
    assert len({t for f, t in tables if f == "qq"}) == 1


def test_python_qq_rank_handles_large_entries():
    rows = [{0: 3**40, 1: 2**70}, {0: 5**30, 1: 7**25}, {0: 1, 1: 1}]
    assert _kernels_py._rank_qq(rows) == 2


def test_pure_environment_flag_selects_python():
    env = dict(os.environ, ORIENTED_REG_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from oriented_reg import kernels; print(kernels.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("gpu")
