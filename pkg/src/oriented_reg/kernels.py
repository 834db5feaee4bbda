"""Select the compiled kernels when built, else the pure-Python ones.

Set ``ORIENTED_REG_PURE=1`` to force the fallback at import time, or call
:func:`use_backend` at run time (the benchmark does this).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_WIDTH = 63

_active = _kernels_py if (_compiled is None or os.environ.get("ORIENTED_REG_PURE")) else _compiled


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def backend() -> str:
    return _active.BACKEND


def set_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name: str):
    prev = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _impl(ground: int):
    return _active if ground.bit_length() <= _WIDTH else _kernels_py


def independent_sets(ground: int, gens) -> list[int]:
    return _impl(ground).independent_sets(ground, gens)


def reduced_homology_gf2(faces) -> list[int]:
    faces = list(faces)
    width = max(faces, default=0)
    return _impl(width).reduced_homology_gf2(faces)


def independence_homology_gf2(ground: int, gens) -> list[int]:
    return _impl(ground).independence_homology_gf2(ground, list(gens))


def reduced_homology_qq(faces) -> list[int]:
    faces = list(faces)
    impl = _impl(max(faces, default=0))
    try:
        return impl.reduced_homology_qq(faces)
    except OverflowError:
        return _kernels_py.reduced_homology_qq(faces)


def independence_homology_qq(ground: int, gens) -> list[int]:
    gens = list(gens)
    try:
        return _impl(ground).independence_homology_qq(ground, gens)
    except OverflowError:
        return _kernels_py.independence_homology_qq(ground, gens)


def hochster_sweep(ground: int, gens, weights, rational: bool, sigmas=None, prune: bool = True):
    return _impl(ground).hochster_sweep(ground, list(gens), list(weights), rational, sigmas, prune)


group_by_size = _kernels_py.group_by_size
