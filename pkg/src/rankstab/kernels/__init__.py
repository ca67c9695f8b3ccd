"""Kernel backend selection: compiled extension if built, else pure Python.

Set RANKSTAB_BACKEND=pure (or =compiled) to force a backend for the whole
process; ``get_kernels`` also accepts an explicit name for benchmarks and
parity tests.
"""

from __future__ import annotations

import os
from typing import NamedTuple

from rankstab.kernels import pure as _pure

try:
    from rankstab.kernels import _speedups as _compiled
except ImportError:
    _compiled = None


class KernelSet(NamedTuple):
    name: str
    betweenness: object
    closeness_sums: object
    bfs_dist_sigma: object


_PURE = KernelSet("pure", _pure.betweenness, _pure.closeness_sums, _pure.bfs_dist_sigma)
_COMPILED = (
    KernelSet("compiled", _compiled.betweenness, _compiled.closeness_sums,
              _compiled.bfs_dist_sigma)
    if _compiled is not None
    else None
)


def available_backends() -> list[str]:
    return ["pure"] + (["compiled"] if _COMPILED is not None else [])


def get_kernels(name: str | None = None) -> KernelSet:
    if name is None:
        name = os.environ.get("RANKSTAB_BACKEND")
    if name is None:
        return _COMPILED if _COMPILED is not None else _PURE
    if name == "pure":
        return _PURE
    if name == "compiled":
        if _COMPILED is None:
            raise RuntimeError("compiled kernels requested but the extension is not built")
        return _COMPILED
    raise ValueError(f"unknown kernel backend {name!r}")


BACKEND = get_kernels().name
