"""Graded Betti numbers of monomial ideals by Hochster's formula.

The ideal is polarized, variables outside its support are dropped, and
``beta_{i,j}(R/I)`` is assembled from the reduced homology of induced
subcomplexes of the Stanley-Reisner complex. Only subsets that are unions
of generator supports can contribute; any other subset has a cone point.

Two sweeps are available and tests check that they agree:

* ``reduce=False`` walks all ``2^n`` subsets of the polarized variables
  and skips the coned ones.
* ``reduce=True`` first merges variables that divide exactly the same
  generators into one variable of that multiplicity, then walks only the
  lcm lattice. This is valid because substituting a product of fresh
  variables for one variable is flat and preserves Betti numbers up to
  the degree rescaling, which the multiplicities record.

Ranks come from :mod:`oriented_reg.kernels`: XOR elimination over GF(2),
and exact fraction-free integer elimination over the rationals.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import NotAPartition, NotSquarefree, TooLarge, UnitIdeal, ZeroIdeal
from .monomial import MonomialIdeal, ideal_intersection, polarize

DEFAULT_MAX_VARS = 18
FIELDS = ("gf2", "qq")


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _check_field(field: str) -> str:
    f = field.lower()
    if f in ("gf2", "gf(2)", "z2", "2"):
        return "gf2"
    if f in ("qq", "q", "rationals", "0"):
        return "qq"
    raise ValueError(f"unsupported field {field!r}; use 'gf2' or 'qq'")


# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces are bitmasks over vertices ``0..vertex_count-1``.

    An empty ``faces`` set is the void complex; ``{0}`` is the irrelevant
    complex holding only the empty face.
    """

    vertex_count: int
    faces: frozenset[int]

    def __post_init__(self):
        full = (1 << self.vertex_count) - 1
        for f in self.faces:
            if f & ~full:
                raise ValueError(f"face {f:#b} exceeds {self.vertex_count} vertices")
            rest = f
            while rest:
                bit = rest & -rest
                rest ^= bit
                if f ^ bit not in self.faces:
                    raise ValueError(f"faces are not closed under removal at {f:#b}")

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces: set[int] = set()
        for facet in facets:
            mask = 0
            for v in facet:
                mask |= 1 << v
            sub = mask
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & mask
        return cls(vertex_count, frozenset(faces))

    def is_void(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> int:
        """-1 for the irrelevant complex; the void complex also reports -1."""
        return max((_popcount(f) for f in self.faces), default=0) - 1

    def induced(self, mask: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, frozenset(f for f in self.faces if f & ~mask == 0))


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Faces are the subsets of ``ideal.variables`` whose product is not in the ideal."""
    if not ideal.is_squarefree():
        raise NotSquarefree("the Stanley-Reisner complex needs a squarefree ideal")
    if ideal.is_unit():
        raise UnitIdeal("the unit ideal has no Stanley-Reisner complex")
    index = {v: k for k, v in enumerate(ideal.variables)}
    gens = [sum(1 << index[v] for v in g.support) for g in ideal.generators]
    n = len(ideal.variables)
    return SimplicialComplex(n, frozenset(kernels.independent_sets((1 << n) - 1, gens)))


def reduced_homology_ranks(K: SimplicialComplex, field: str = "gf2") -> list[int]:
    """Reduced Betti numbers of ``K`` indexed by dimension ``-1..dim``.

    The void complex gives ``[0]``; the irrelevant complex gives ``[1]``.
    """
    if _check_field(field) == "gf2":
        return kernels.reduced_homology_gf2(K.faces)
    return kernels.reduced_homology_qq(K.faces)


# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Nonzero graded Betti numbers keyed by ``(i, j)``.

    ``subject`` is ``"ideal"`` or ``"quotient"``; the quotient table carries
    ``beta_{0,0} = 1``.
    """

    entries: Mapping[tuple[int, int], int]
    subject: str = "ideal"
    field: str = "gf2"
    meta: Mapping[str, object] = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.entries.items()) if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def regularity(self) -> int:
        if not self.entries:
            raise ValueError("empty Betti table has no regularity")
        return max(j - i for i, j in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def totals(self) -> dict[int, int]:
        out: Counter[int] = Counter()
        for (i, _), b in self.entries.items():
            out[i] += b
        return dict(sorted(out.items()))

    def to_quotient(self) -> "BettiTable":
        if self.subject == "quotient":
            return self
        shifted = {(i + 1, j): b for (i, j), b in self.entries.items()}
        shifted[(0, 0)] = 1
        return BettiTable(shifted, "quotient", self.field, self.meta)

    def to_ideal(self) -> "BettiTable":
        if self.subject == "ideal":
            return self
        shifted = {(i - 1, j): b for (i, j), b in self.entries.items() if i > 0}
        return BettiTable(shifted, "ideal", self.field, self.meta)

    def macaulay_str(self) -> str:
        """Rows ``j - i``, columns ``i``, zeros shown as ``.``."""
        if not self.entries:
            return "(zero table)"
        cols = range(0, self.projective_dimension + 1)
        rows = range(min(j - i for i, j in self.entries), self.regularity + 1)
        totals = self.totals()
        grid = [["", *[str(i) for i in cols]], ["total:", *[str(totals.get(i, ".")) for i in cols]]]
        for r in rows:
            grid.append([f"{r}:", *[str(self.entries.get((i, i + r), ".")) for i in cols]])
        width = max(len(c) for row in grid for c in row[1:])
        head = max(len(row[0]) for row in grid)
        return "\n".join(
            row[0].rjust(head) + " " + " ".join(c.rjust(width) for c in row[1:]) for row in grid
        )

    def to_csv(self) -> str:
        """RFC 4180 text: CRLF line ends, rows sorted by ``(i, j)``."""
        lines = ["i,j,beta"] + [f"{i},{j},{self.entries[i, j]}" for i, j in sorted(self.entries)]
        return "\r\n".join(lines) + "\r\n"


# the sweep


@dataclass(frozen=True)
class _Prepared:
    names: tuple[str, ...]
    weights: tuple[int, ...]
    gens: tuple[int, ...]


def polarized_variable_count(ideal: MonomialIdeal) -> int:
    """Number of variables in the support of the polarization."""
    top: dict[str, int] = {}
    for g in ideal.generators:
        for v, e in g.items():
            top[v] = max(top.get(v, 0), e)
    return sum(top.values())


def _prepare(ideal: MonomialIdeal, reduce: bool) -> _Prepared:
    pol, _ = polarize(ideal)
    supp = pol.support()
    names = [v for v in pol.variables if v in supp]
    gen_list = sorted(pol.generators, key=pol.sort_key)
    if not reduce:
        index = {v: k for k, v in enumerate(names)}
        gens = tuple(sum(1 << index[v] for v in g.support) for g in gen_list)
        return _Prepared(tuple(names), (1,) * len(names), gens)
    classes: dict[frozenset[int], list[str]] = {}
    for v in names:
        key = frozenset(k for k, g in enumerate(gen_list) if g.exponent(v))
        classes.setdefault(key, []).append(v)
    keys = list(classes)
    gens = tuple(
        sum(1 << c for c, key in enumerate(keys) if k in key) for k in range(len(gen_list))
    )
    return _Prepared(
        tuple("+".join(classes[key]) for key in keys),
        tuple(len(classes[key]) for key in keys),
        gens,
    )


def _lcm_lattice(gens: Sequence[int]) -> list[int]:
    seen = {0}
    for g in gens:
        seen |= {s | g for s in seen}
    return sorted(seen)


def _sweep(task) -> dict[tuple[int, int], int]:
    """Partial ``beta(R/I)`` over the given subsets; module level so it pickles."""
    ground, gens, weights, field, sigmas, prune = task
    return kernels.hochster_sweep(ground, gens, weights, field == "qq", sigmas, prune)


def graded_betti(
    ideal: MonomialIdeal,
    field: str = "gf2",
    max_vars: int | None = DEFAULT_MAX_VARS,
    reduce: bool = True,
    workers: int | None = None,
) -> BettiTable:
    """Graded Betti numbers ``beta_{i,j}(I)`` of a nonzero proper monomial ideal.

    Raises :class:`TooLarge` when the polarization has more than
    ``max_vars`` variables in its support (``None`` disables the cap).
    """
    fld = _check_field(field)
    if ideal.is_zero():
        raise ZeroIdeal("graded Betti numbers of the zero ideal are all zero")
    if ideal.is_unit():
        raise UnitIdeal("the unit ideal is not proper")
    count = polarized_variable_count(ideal)
    if max_vars is not None and count > max_vars:
        raise TooLarge(count, max_vars)

    prep = _prepare(ideal, reduce)
    ground = (1 << len(prep.names)) - 1
    # the plain route leaves pruning to the kernel; the lattice needs none
    sigmas = _lcm_lattice(prep.gens) if reduce else range(1, ground + 1)

    if workers and workers > 1:
        tasks = [
            (ground, prep.gens, prep.weights, fld, sigmas[k::workers], not reduce)
            for k in range(workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep, tasks))
    else:
        parts = [_sweep((ground, prep.gens, prep.weights, fld, None if not reduce else sigmas, not reduce))]

    merged: Counter[tuple[int, int]] = Counter()
    for part in parts:
        for key in sorted(part):
            merged[key] += part[key]
    quotient = {(i - 1, j): b for (i, j), b in merged.items() if i >= 1}
    meta = {"polarized_vars": count, "swept_vars": len(prep.names), "subsets": len(sigmas)}
    return BettiTable(quotient, "ideal", fld, meta)


def regularity_oracle(ideal: MonomialIdeal, field: str = "gf2", **kwargs) -> int:
    """``max{j - i : beta_{i,j}(I) != 0}``."""
    return graded_betti(ideal, field, **kwargs).regularity


# splittings


@dataclass(frozen=True)
class SplittingReport:
    holds: bool
    violations: tuple[tuple[int, int, int, int], ...]
    """Each violation is ``(i, j, beta_ij(I), predicted)``."""

    def __bool__(self) -> bool:
        return self.holds


def betti_splitting_check(
    ideal: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal, field: str = "gf2", **kwargs
) -> SplittingReport:
    """Check ``beta_ij(I) = beta_ij(J) + beta_ij(K) + beta_{i-1,j}(J & K)`` everywhere."""
    if J.is_zero() or K.is_zero():
        raise NotAPartition("both parts of a splitting must be nonzero")
    if J.generators & K.generators or J.generators | K.generators != ideal.generators:
        raise NotAPartition("the generators of J and K must partition those of I")
    bI = graded_betti(ideal, field, **kwargs)
    bJ = graded_betti(J, field, **kwargs)
    bK = graded_betti(K, field, **kwargs)
    bJK = graded_betti(ideal_intersection(J, K), field, **kwargs)
    cells = set(bI.entries) | set(bJ.entries) | set(bK.entries)
    cells |= {(i + 1, j) for i, j in bJK.entries}
    violations = []
    for i, j in sorted(cells):
        predicted = bJ[i, j] + bK[i, j] + (bJK[i - 1, j] if i > 0 else 0)
        if predicted != bI[i, j]:
            violations.append((i, j, bI[i, j], predicted))
    return SplittingReport(not violations, tuple(violations))


def has_linear_resolution(J: MonomialIdeal, field: str = "gf2", **kwargs) -> bool:
    """Equigenerated in degree ``d`` with ``reg(J) = d``."""
    if J.is_zero() or J.is_unit():
        return False
    degrees = {g.degree for g in J.generators}
    if len(degrees) != 1:
        return False
    return regularity_oracle(J, field, **kwargs) == degrees.pop()


def splitting_condition_check(
    ideal: MonomialIdeal, x: str, field: str = "gf2", **kwargs
) -> tuple[MonomialIdeal, MonomialIdeal, bool]:
    """``J`` = generators divisible by ``x``, ``K`` = the rest.

    The flag says whether both are nonzero and ``J`` has a linear resolution.
    """
    inJ = [g for g in ideal.generators if g.exponent(x)]
    inK = [g for g in ideal.generators if not g.exponent(x)]
    J = MonomialIdeal(inJ, ideal.variables)
    K = MonomialIdeal(inK, ideal.variables)
    ok = bool(inJ) and bool(inK) and has_linear_resolution(J, field, **kwargs)
    return J, K, ok


__all__ = [
    "BettiTable",
    "DEFAULT_MAX_VARS",
    "FIELDS",
    "SimplicialComplex",
    "SplittingReport",
    "betti_splitting_check",
    "graded_betti",
    "has_linear_resolution",
    "polarized_variable_count",
    "reduced_homology_ranks",
    "regularity_oracle",
    "splitting_condition_check",
    "stanley_reisner_complex",
]
