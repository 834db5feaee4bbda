"""Exact monomials and monomial ideals.

Ideals are stored by their unique minimal generating set. Intersection is
computed from pairwise lcms, which is quadratic in the generator count and
then minimalized; that is comfortable up to a few dozen generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ZeroIdeal

_TOKEN = re.compile(r"^\s*([A-Za-z_][\w@.']*)\s*(?:\^\s*(\d+))?\s*$")


class Monomial:
    """A monomial as a sparse map from variable name to positive exponent."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        exps: dict[str, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v!r}")
            if e:
                exps[str(v)] = exps.get(str(v), 0) + int(e)
        self._exps = exps
        self._hash = hash(frozenset(exps.items()))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Parse ``"x^2*y"``; ``"1"`` is the unit monomial."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        exps: dict[str, int] = {}
        for tok in text.split("*"):
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse monomial factor {tok!r}")
            exps[m.group(1)] = exps.get(m.group(1), 0) + int(m.group(2) or 1)
        return cls(exps)

    def exponent(self, v: str) -> int:
        return self._exps.get(v, 0)

    def items(self):
        return self._exps.items()

    @property
    def degree(self) -> int:
        return sum(self._exps.values())

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._exps)

    def is_unit(self) -> bool:
        return not self._exps

    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self._exps.values())

    def divides(self, other: "Monomial") -> bool:
        oe = other._exps
        return all(oe.get(v, 0) >= e for v, e in self._exps.items())

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for v, e in other._exps.items():
            exps[v] = exps.get(v, 0) + e
        return Monomial(exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial({v: e - other.exponent(v) for v, e in self._exps.items()})

    def lcm(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for v, e in other._exps.items():
            if e > exps.get(v, 0):
                exps[v] = e
        return Monomial(exps)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial({v: min(e, other.exponent(v)) for v, e in self._exps.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def format(self, order: Sequence[str] | None = None) -> str:
        if not self._exps:
            return "1"
        rank = {v: i for i, v in enumerate(order or ())}
        names = sorted(self._exps, key=lambda v: (rank.get(v, len(rank)), v))
        return "*".join(v if self._exps[v] == 1 else f"{v}^{self._exps[v]}" for v in names)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Monomial({self.format()!r})"


def minimalize(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    """Drop duplicates and every monomial divisible by another one."""
    unique = sorted(set(gens), key=lambda m: m.degree)
    kept: list[Monomial] = []
    for m in unique:
        if not any(g.divides(m) for g in kept):
            kept.append(m)
    return frozenset(kept)


def _merge_vars(*orders: Iterable[str]) -> tuple[str, ...]:
    out: dict[str, None] = {}
    for order in orders:
        for v in order:
            out.setdefault(v, None)
    return tuple(out)


class MonomialIdeal:
    """A monomial ideal of ``k[variables]`` given by its minimal generators.

    Equality compares minimal generating sets only; ``variables`` fixes the
    ambient ring and the display order.
    """

    __slots__ = ("variables", "generators")

    def __init__(self, generators: Iterable[Monomial | str] = (), variables: Iterable[str] | None = None):
        gens = [g if isinstance(g, Monomial) else Monomial.parse(g) for g in generators]
        self.generators: frozenset[Monomial] = minimalize(gens)
        support = sorted({v for g in self.generators for v in g.support})
        self.variables: tuple[str, ...] = _merge_vars(variables or (), support)

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] | None = None) -> "MonomialIdeal":
        """Parse ``"(a*b, b*c^2)"`` or the same without parentheses."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        parts = [p for p in re.split(r"[,\s]+", body) if p]
        return cls([Monomial.parse(p) for p in parts], variables)

    # predicates

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_unit() for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    __contains__ = contains

    def support(self) -> frozenset[str]:
        return frozenset(v for g in self.generators for v in g.support)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonomialIdeal) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    # display

    def sort_key(self, m: Monomial):
        return (tuple(-m.exponent(v) for v in self.variables), m.degree)

    def sorted_generators(self) -> list[Monomial]:
        return sorted(self.generators, key=self.sort_key)

    def format(self) -> str:
        return "(" + ", ".join(g.format(self.variables) for g in self.sorted_generators()) + ")"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.format()!r})"

    # arithmetic

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_intersection(self, other)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return ideal_colon(self, m)


def ideal_sum(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(i.generators | j.generators, _merge_vars(i.variables, j.variables))


def ideal_product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(
        (a * b for a in i.generators for b in j.generators),
        _merge_vars(i.variables, j.variables),
    )


def ideal_intersection(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(
        (a.lcm(b) for a in i.generators for b in j.generators),
        _merge_vars(i.variables, j.variables),
    )


def ideal_colon(i: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    return MonomialIdeal(
        (g / g.gcd(m) for g in i.generators),
        _merge_vars(i.variables, sorted(m.support)),
    )


def support(i: MonomialIdeal) -> frozenset[str]:
    return i.support()


def edge_ideal(graph) -> MonomialIdeal:
    """``(x_i * x_j^{w_j} : (x_i, x_j) an edge)``; the zero ideal if edgeless."""
    gens = [Monomial({tail: 1, head: graph.weight(head)}) for tail, head in graph.edges]
    return MonomialIdeal(gens, graph.vertices)


# polarization

SLOT_SEP = "@"


def slot_name(var: str, j: int) -> str:
    return f"{var}{SLOT_SEP}{j}"


@dataclass(frozen=True)
class PolarizationMap:
    """Records which polarized variable stands for slot ``j`` of ``var``."""

    forward: Mapping[tuple[str, int], str]
    origin: MonomialIdeal

    def backward(self, polarized: str) -> tuple[str, int]:
        for key, name in self.forward.items():
            if name == polarized:
                return key
        raise KeyError(polarized)

    def display_name(self, polarized: str) -> str:
        var, j = self.backward(polarized)
        return var if j == 1 else polarized


def polarize(ideal: MonomialIdeal) -> tuple[MonomialIdeal, PolarizationMap]:
    """Replace ``x^a`` in each generator by ``x@1 * ... * x@a``."""
    if ideal.is_zero():
        raise ZeroIdeal("cannot polarize the zero ideal")
    top: dict[str, int] = {}
    for g in ideal.generators:
        for v, e in g.items():
            top[v] = max(top.get(v, 0), e)
    forward: dict[tuple[str, int], str] = {}
    order: list[str] = []
    for v in ideal.variables:
        for j in range(1, top.get(v, 0) + 1):
            forward[(v, j)] = slot_name(v, j)
            order.append(slot_name(v, j))
    gens = [
        Monomial({forward[(v, j)]: 1 for v, e in g.items() for j in range(1, e + 1)})
        for g in ideal.generators
    ]
    pol = MonomialIdeal(gens, order)
    assert len(pol) == len(ideal)
    return pol, PolarizationMap(forward, ideal)
