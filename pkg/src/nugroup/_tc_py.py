"""Pure-Python coset enumeration kernel.

Reference implementation of the HLT strategy with full coincidence
processing (union-find with path compression, dead-row replay) plus an
optional Felsch-style deduction-stack mode.  The compiled kernel in
``_tc_c`` mirrors the HLT path; both return the same raw table, and the
caller standardizes, so outputs are interchangeable.

Letters of relators are column indices: generator i forward = 2*i,
inverse = 2*i + 1.  Undefined entries are -1.
"""

from __future__ import annotations

import time

import numpy as np


class LimitExceeded(Exception):
    def __init__(self, kind: str, high_water: int):
        super().__init__(f"enumeration {kind} limit exceeded (high water {high_water} cosets)")
        self.kind = kind
        self.high_water = high_water


def _inv_col(c: int) -> int:
    return c ^ 1


class _Table:
    def __init__(self, ncols: int, max_live: int, deadline: float | None):
        self.ncols = ncols
        self.rows: list[list[int]] = [[-1] * ncols]
        self.p: list[int] = [0]  # union-find parents
        self.live = 1
        self.high_water = 1
        self.max_live = max_live
        self.deadline = deadline
        self.defines = 0

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:  # path compression
            p[k], k = r, p[k]
        return r

    def define(self, alpha: int, c: int) -> int:
        beta = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.p.append(beta)
        self.rows[alpha][c] = beta
        self.rows[beta][_inv_col(c)] = alpha
        self.live += 1
        if self.live > self.high_water:
            self.high_water = self.live
        self.defines += 1
        if self.live > self.max_live:
            raise LimitExceeded("cosets", self.high_water)
        if self.deadline is not None and self.defines % 4096 == 0:
            if time.monotonic() > self.deadline:
                raise LimitExceeded("time", self.high_water)
        return beta

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        qi = 0
        rows = self.rows
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = rows[gamma]
            for c in range(self.ncols):
                delta = row[c]
                if delta == -1:
                    continue
                rows[delta][_inv_col(c)] = -1
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if rows[mu][c] != -1:
                    self._merge(nu, rows[mu][c], queue)
                elif rows[nu][_inv_col(c)] != -1:
                    self._merge(mu, rows[nu][_inv_col(c)], queue)
                else:
                    rows[mu][c] = nu
                    rows[nu][_inv_col(c)] = mu

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        self.live -= 1
        queue.append(b)


def _scan_and_fill(t: _Table, alpha: int, word: tuple[int, ...], fill: bool = True) -> None:
    rows = t.rows
    f, b = alpha, alpha
    i, j = 0, len(word) - 1
    while True:
        while i <= j and rows[f][word[i]] != -1:
            f = rows[f][word[i]]
            i += 1
        if i > j:
            if f != b:
                t.coincidence(f, b)
            return
        while j >= i and rows[b][_inv_col(word[j])] != -1:
            b = rows[b][_inv_col(word[j])]
            j -= 1
        if j < i:
            t.coincidence(f, b)
            return
        if j == i:
            rows[f][word[i]] = b
            rows[b][_inv_col(word[i])] = f
            return
        if not fill:
            return
        t.define(f, word[i])


def _lookahead(t: _Table, relators) -> None:
    alpha = 0
    while alpha < len(t.rows):
        if t.p[alpha] == alpha:
            for rel in relators:
                _scan_and_fill(t, alpha, rel, fill=False)
                if t.p[alpha] != alpha:
                    break
        alpha += 1


def _compact(t: _Table) -> np.ndarray:
    """Live rows in order, entries resolved to live indices, as int32."""
    remap = {}
    for idx in range(len(t.rows)):
        if t.p[idx] == idx:
            remap[idx] = len(remap)
    out = np.empty((len(remap), t.ncols), dtype=np.int32)
    r = 0
    for idx in range(len(t.rows)):
        if t.p[idx] != idx:
            continue
        row = t.rows[idx]
        for c in range(t.ncols):
            v = row[c]
            if v == -1:
                raise AssertionError("incomplete table after enumeration")
            out[r, c] = remap[t.rep(v)]
        r += 1
    return out


def enumerate_hlt(
    ncols: int,
    relators: list[tuple[int, ...]],
    max_live: int,
    deadline: float | None,
) -> tuple[np.ndarray, int, int]:
    """HLT enumeration over the trivial subgroup.

    Returns (complete table rows, live count, high-water live count).  A
    single lookahead pass is attempted before giving up on the coset limit.
    """
    t = _Table(ncols, max_live, deadline)
    tried_lookahead = False

    def retry_after_lookahead(exc: LimitExceeded) -> None:
        nonlocal tried_lookahead
        if exc.kind != "cosets" or tried_lookahead:
            raise exc
        tried_lookahead = True
        _lookahead(t, relators)
        if t.live > t.max_live:
            raise exc

    alpha = 0
    while alpha < len(t.rows):
        if t.p[alpha] == alpha:
            for rel in relators:
                try:
                    _scan_and_fill(t, alpha, rel)
                except LimitExceeded as exc:
                    retry_after_lookahead(exc)
                    if t.p[alpha] != alpha:
                        break
                    _scan_and_fill(t, alpha, rel)
                if t.p[alpha] != alpha:
                    break
            if t.p[alpha] == alpha:
                row = t.rows[alpha]
                for c in range(ncols):
                    if row[c] == -1:
                        try:
                            t.define(alpha, c)
                        except LimitExceeded as exc:
                            retry_after_lookahead(exc)
                            if t.p[alpha] != alpha:
                                break
                            if row[c] == -1:
                                t.define(alpha, c)
        alpha += 1
    table = _compact(t)
    return table, t.live, t.high_water


def enumerate_felsch(
    ncols: int,
    relators: list[tuple[int, ...]],
    max_live: int,
    deadline: float | None,
) -> tuple[np.ndarray, int, int]:
    """Felsch-style enumeration: minimal definitions, eager deductions.

    Every table write is pushed on a deduction stack; processing a
    deduction (alpha, c) scans, at alpha, every cyclic conjugate of a
    relator (or inverted relator) that starts with column c.
    """
    by_first: dict[int, list[tuple[int, ...]]] = {c: [] for c in range(ncols)}
    seen = set()
    for rel in relators:
        for w in (rel, tuple(_inv_col(c) for c in reversed(rel))):
            for k in range(len(w)):
                rot = w[k:] + w[:k]
                if rot and rot not in seen:
                    seen.add(rot)
                    by_first[rot[0]].append(rot)

    t = _Table(ncols, max_live, deadline)
    deductions: list[tuple[int, int]] = []

    def push_write(a: int, c: int, b: int) -> None:
        t.rows[a][c] = b
        t.rows[b][_inv_col(c)] = a
        deductions.append((a, c))

    def scan(alpha: int, word: tuple[int, ...]) -> None:
        rows = t.rows
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while i <= j and rows[f][word[i]] != -1:
            f = rows[f][word[i]]
            i += 1
        if i > j:
            if f != b:
                t.coincidence(f, b)
            return
        while j >= i and rows[b][_inv_col(word[j])] != -1:
            b = rows[b][_inv_col(word[j])]
            j -= 1
        if j < i:
            t.coincidence(f, b)
        elif j == i:
            push_write(f, word[i], b)

    def drain() -> None:
        while deductions:
            alpha, c = deductions.pop()
            alpha = t.rep(alpha)
            for w in by_first[c]:
                scan(alpha, w)
                if t.p[alpha] != alpha:
                    break
            alpha = t.rep(alpha)
            beta = t.rows[alpha][c]
            if beta != -1:
                beta = t.rep(beta)
                for w in by_first[_inv_col(c)]:
                    scan(beta, w)
                    if t.p[beta] != beta:
                        break

    alpha = 0
    while alpha < len(t.rows):
        if t.p[alpha] == alpha:
            row = t.rows[alpha]
            for c in range(ncols):
                if t.p[alpha] != alpha:
                    break
                if row[c] == -1:
                    beta = t.define(alpha, c)
                    deductions.append((alpha, c))
                    drain()
        alpha += 1
    # Coincidence replay writes rows without pushing deductions; a scan
    # fixpoint over the complete table recovers anything that was missed.
    changed = True
    while changed:
        changed = False
        before = t.live
        a = 0
        while a < len(t.rows):
            if t.p[a] == a:
                for rel in relators:
                    _scan_and_fill(t, a, rel, fill=False)
                    if t.p[a] != a:
                        break
            a += 1
        if t.live != before:
            changed = True
    table = _compact(t)
    return table, t.live, t.high_water
