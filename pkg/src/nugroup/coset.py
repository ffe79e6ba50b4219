"""Todd-Coxeter coset enumeration over the trivial subgroup.

The enumeration kernel is selected at import: the compiled extension
(`nugroup._tc_c`) when it built, otherwise the pure-Python reference
kernel.  Both produce the same raw table and the result is standardized
here, so tables are byte-identical across kernels.  The completed,
standardized table of the trivial subgroup is the regular representation
of the presented group.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import numpy as np

from . import _tc_py
from ._tc_py import LimitExceeded
from .engine import CayleyEngine, standardize_rows
from .words import Presentation

try:
    from . import _tc_c
except ImportError:
    _tc_c = None

__all__ = [
    "CosetTable",
    "EnumLimits",
    "LimitExceeded",
    "enumerate_presentation",
    "to_regular_engine",
    "validate_table",
    "active_kernel",
]


@dataclass(frozen=True)
class EnumLimits:
    max_cosets: int = 2_000_000
    max_time: float = 600.0

    def __post_init__(self):
        if self.max_cosets <= 0 or self.max_time <= 0:
            raise ValueError("enumeration limits must be positive")


@dataclass
class CosetTable:
    """A complete, standardized coset table.

    rows[c] holds the images of coset c under (gen0, gen0^-1, gen1, ...).
    Incomplete enumerations never reach this type: the enumerator raises
    LimitExceeded instead, so status is always "complete" here.
    """

    rows: np.ndarray
    ngens: int
    num_cosets: int
    status: str
    bfs_parent: np.ndarray
    bfs_edge: np.ndarray
    bfs_depth: np.ndarray
    high_water: int


def _relator_cols(pres: Presentation) -> list[tuple[int, ...]]:
    """Relators as column-index tuples; empty relators are dropped."""
    out = []
    for rel in pres.relators:
        cols = tuple(2 * (v - 1) if v > 0 else 2 * (-v - 1) + 1 for v in rel.signed)
        if cols:
            out.append(cols)
    return out


def active_kernel() -> str:
    """Which enumeration kernel "auto" selects: "c" or "py"."""
    if os.environ.get("NUGROUP_KERNEL") in ("py", "c"):
        return os.environ["NUGROUP_KERNEL"]
    return "c" if _tc_c is not None else "py"


def enumerate_presentation(
    pres: Presentation,
    limits: EnumLimits | None = None,
    *,
    kernel: str = "auto",
    felsch: bool = False,
    validate: bool = True,
) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup; HLT strategy.

    Deterministic: identical inputs give identical standardized tables.
    Raises LimitExceeded (with the high-water coset count) rather than ever
    returning an incomplete table.  `felsch=True` switches to the
    deduction-stack strategy of the pure-Python kernel.
    """
    limits = limits or EnumLimits()
    if kernel == "auto":
        kernel = active_kernel()
    if felsch:
        kernel = "py"
    ncols = 2 * pres.ngens
    relators = _relator_cols(pres)
    deadline = time.monotonic() + limits.max_time
    if kernel == "c":
        if _tc_c is None:
            raise RuntimeError("compiled kernel requested but not built")
        flat = np.concatenate([np.array(r, dtype=np.int32) for r in relators]) if relators else np.empty(0, np.int32)
        offsets = np.zeros(len(relators) + 1, dtype=np.int64)
        np.cumsum([len(r) for r in relators], out=offsets[1:])
        status, buf, live, high = _tc_c.enumerate_hlt(
            ncols, flat, offsets, limits.max_cosets, deadline
        )
        if status == 1:
            raise LimitExceeded("cosets", high)
        if status == 2:
            raise LimitExceeded("time", high)
        raw = np.frombuffer(buf, dtype=np.int32).reshape(live, ncols)
    elif kernel == "py":
        fn = _tc_py.enumerate_felsch if felsch else _tc_py.enumerate_hlt
        raw, live, high = fn(ncols, relators, limits.max_cosets, deadline)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    rows, parent, edge, depth = standardize_rows(raw)
    table = CosetTable(
        rows=rows,
        ngens=pres.ngens,
        num_cosets=live,
        status="complete",
        bfs_parent=parent,
        bfs_edge=edge,
        bfs_depth=depth,
        high_water=high,
    )
    if validate:
        validate_table(table, pres)
    return table


def validate_table(table: CosetTable, pres: Presentation) -> None:
    """Exhaustive post-hoc checks: each generator column is a permutation,
    inverse columns invert it, and every relator scan closes everywhere."""
    rows = table.rows
    n = table.num_cosets
    ident = np.arange(n, dtype=np.int32)
    for i in range(table.ngens):
        fwd = rows[:, 2 * i]
        bwd = rows[:, 2 * i + 1]
        if not np.array_equal(np.sort(fwd), ident):
            raise AssertionError(f"column of generator {i} is not a permutation")
        if not np.array_equal(bwd[fwd], ident):
            raise AssertionError(f"inverse column of generator {i} is inconsistent")
    for ri, rel in enumerate(_relator_cols(pres)):
        pts = ident
        for c in rel:
            pts = rows[pts, c]
        if not np.array_equal(pts, ident):
            raise AssertionError(f"relator {ri} does not close on every coset")


def to_regular_engine(table: CosetTable, pres: Presentation) -> CayleyEngine:
    """Wrap a complete table as the regular representation of the group."""
    return CayleyEngine(
        table.rows,
        pres.generators,
        table.bfs_parent,
        table.bfs_edge,
        table.bfs_depth,
        name=pres.name,
    )


def enumerate_to_engine(
    pres: Presentation,
    limits: EnumLimits | None = None,
    **kwargs,
) -> CayleyEngine:
    return to_regular_engine(enumerate_presentation(pres, limits, **kwargs), pres)
