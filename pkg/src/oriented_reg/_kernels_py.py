"""Pure-Python kernels for the homology oracle.

Faces are bitmasks over at most a few dozen vertices; Python ints double
as arbitrary-width GF(2) row vectors, so elimination is XOR on ints.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

BACKEND = "python"


def independent_sets(ground: int, gens: Iterable[int]) -> list[int]:
    """Subsets of ``ground`` that contain no mask in ``gens`` (0 included).

    Returns the empty list (void complex) when some mask is 0.
    """
    gens = [g for g in gens if g & ~ground == 0]
    if any(g == 0 for g in gens):
        return []
    faces = [0]
    rest = ground
    while rest:
        bit = rest & -rest
        rest ^= bit
        relevant = [g for g in gens if g & bit]
        grown = []
        for f in faces:
            c = f | bit
            for g in relevant:
                if g & c == g:
                    break
            else:
                grown.append(c)
        faces.extend(grown)
    return faces


def _rank_gf2(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                break
            row ^= p
    return len(pivots)


def boundary_ranks_gf2(by_size: Sequence[Sequence[int]]) -> list[int]:
    """``ranks[k]`` is the GF(2) rank of the boundary from size-k to size-(k-1) faces."""
    ranks = [0] * (len(by_size) + 1)
    if len(by_size) > 1 and by_size[1]:
        ranks[1] = 1
    for k in range(2, len(by_size)):
        index = {f: i for i, f in enumerate(by_size[k - 1])}
        rows = []
        for f in by_size[k]:
            row = 0
            rest = f
            while rest:
                bit = rest & -rest
                rest ^= bit
                row |= 1 << index[f ^ bit]
            rows.append(row)
        ranks[k] = _rank_gf2(rows)
    return ranks


def group_by_size(faces: Iterable[int]) -> list[list[int]]:
    by_size: list[list[int]] = []
    for f in faces:
        k = f.bit_count() if hasattr(f, "bit_count") else bin(f).count("1")
        while len(by_size) <= k:
            by_size.append([])
        by_size[k].append(f)
    return by_size


def reduced_homology_gf2(faces: Iterable[int]) -> list[int]:
    """Reduced Betti numbers over GF(2), indexed by dimension -1..top.

    The void complex (no faces) gives ``[0]``.
    """
    by_size = group_by_size(faces)
    if not by_size:
        return [0]
    ranks = boundary_ranks_gf2(by_size)
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(len(by_size))]


def independence_homology_gf2(ground: int, gens: Sequence[int]) -> list[int]:
    return reduced_homology_gf2(independent_sets(ground, gens))


def _rank_qq(rows: Iterable[dict[int, int]]) -> int:
    """Rank over QQ of sparse integer rows by fraction-free elimination."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: a for c, a in row.items() if a}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                g = 0
                for a in row.values():
                    g = gcd(g, a)
                pivots[c] = {k: a // g for k, a in row.items()}
                break
            a, b = row[c], p[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            merged: dict[int, int] = {}
            for k in row.keys() | p.keys():
                val = b * row.get(k, 0) - a * p.get(k, 0)
                if val:
                    merged[k] = val
            g = 0
            for val in merged.values():
                g = gcd(g, val)
            row = {k: val // g for k, val in merged.items()} if g > 1 else merged
    return len(pivots)


def boundary_ranks_qq(by_size: Sequence[Sequence[int]]) -> list[int]:
    """Like :func:`boundary_ranks_gf2` with the signed boundary over QQ."""
    ranks = [0] * (len(by_size) + 1)
    if len(by_size) > 1 and by_size[1]:
        ranks[1] = 1
    for k in range(2, len(by_size)):
        index = {f: i for i, f in enumerate(by_size[k - 1])}
        rows = []
        for f in by_size[k]:
            row: dict[int, int] = {}
            rest, sign = f, 1
            while rest:
                bit = rest & -rest
                rest ^= bit
                row[index[f ^ bit]] = sign
                sign = -sign
            rows.append(row)
        ranks[k] = _rank_qq(rows)
    return ranks


def reduced_homology_qq(faces: Iterable[int]) -> list[int]:
    """Reduced Betti numbers over QQ, indexed by dimension -1..top."""
    by_size = group_by_size(faces)
    if not by_size:
        return [0]
    ranks = boundary_ranks_qq(by_size)
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(len(by_size))]


def independence_homology_qq(ground: int, gens: Sequence[int]) -> list[int]:
    return reduced_homology_qq(independent_sets(ground, gens))


def _submasks(ground: int):
    sub = 0
    while True:
        sub = (sub - ground) & ground
        if sub == 0:
            return
        yield sub


def hochster_sweep(
    ground: int,
    gens: Sequence[int],
    weights: Sequence[int],
    rational: bool,
    sigmas: Iterable[int] | None = None,
    prune: bool = True,
) -> dict[tuple[int, int], int]:
    """Sum ``dim H~_{|s|-i-1}`` over subsets ``s`` into keys ``(i, deg s)``.

    ``sigmas`` defaults to every nonempty subset of ``ground``. With
    ``prune`` a subset is skipped unless it is the union of the masks it
    contains; otherwise it has a cone point and contributes nothing.
    ``weights[b]`` is the degree of bit ``b``.
    """
    homology = independence_homology_qq if rational else independence_homology_gf2
    out: dict[tuple[int, int], int] = {}
    for sigma in (_submasks(ground) if sigmas is None else sigmas):
        if sigma == 0:
            continue
        inside = [g for g in gens if g & ~sigma == 0]
        if prune:
            cover = 0
            for g in inside:
                cover |= g
            if cover != sigma:
                continue
        ranks = homology(sigma, inside)
        size = deg = 0
        rest = sigma
        while rest:
            bit = rest & -rest
            rest ^= bit
            size += 1
            deg += weights[bit.bit_length() - 1]
        for d, r in enumerate(ranks):
            if r:
                out[(size - d, deg)] = out.get((size - d, deg), 0) + r
    return out
