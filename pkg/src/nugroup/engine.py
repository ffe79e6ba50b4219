"""Group arithmetic on regular representations.

A finite group is realized as a CayleyEngine: points 0..n-1 are the group
elements, point 0 is the identity, and each generator acts by right
multiplication through a stored permutation column.  Every point carries a
word in the generators reaching it from 0 along a breadth-first spanning
tree, and all element arithmetic goes through those words, so memory stays
O(n * generators) rather than O(n^2).

Subgroups are sorted point arrays plus a generating set; set-level work
(closures, products, partitions) is vectorized over numpy columns, scalar
element operations walk plain int arrays.  Engines and subgroup sets are
immutable after construction apart from internal memoization.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass

import numpy as np

from .words import Word

__all__ = [
    "CayleyEngine",
    "SubgroupSet",
    "Homomorphism",
    "HomCertificationError",
    "Fingerprint",
    "standardize_rows",
    "subgroup",
    "subgroup_from_points",
    "full_subgroup",
    "trivial_subgroup",
    "normal_closure",
    "commutator_subgroup",
    "iterated_commutator",
    "derived_series",
    "lower_central_series",
    "center",
    "intersection",
    "product_points",
    "product_set",
    "subgroups_equal",
    "exponent",
    "quotient_engine",
    "sub_engine",
    "abelian_invariants",
    "hom_from_gen_images",
    "fingerprint",
    "direct_product_engine",
]


def _standardize(rows: np.ndarray):
    """BFS renumbering from point 0; returns (rows, parent, edge, depth, order)."""
    rows = np.asarray(rows, dtype=np.int32)
    n, ncols = rows.shape
    visited = np.zeros(n, dtype=bool)
    visited[0] = True
    parent = np.full(n, -1, dtype=np.int32)
    edge = np.full(n, -1, dtype=np.int32)
    depth = np.zeros(n, dtype=np.int32)
    chunks = [np.array([0], dtype=np.int32)]
    frontier = chunks[0]
    d = 0
    while frontier.size and ncols:
        nbrs = rows[frontier].reshape(-1)
        fresh = ~visited[nbrs]
        if not fresh.any():
            break
        nb = nbrs[fresh]
        src = np.repeat(frontier, ncols)[fresh]
        via = np.tile(np.arange(ncols, dtype=np.int32), frontier.size)[fresh]
        uniq, first = np.unique(nb, return_index=True)
        by_discovery = np.argsort(first, kind="stable")
        new_pts = uniq[by_discovery].astype(np.int32)
        first = first[by_discovery]
        visited[new_pts] = True
        parent[new_pts] = src[first]
        edge[new_pts] = via[first]
        d += 1
        depth[new_pts] = d
        chunks.append(new_pts)
        frontier = new_pts
    order = np.concatenate(chunks)
    if order.size != n:
        raise ValueError("table is not connected: generators do not reach every point")
    new_of = np.empty(n, dtype=np.int32)
    new_of[order] = np.arange(n, dtype=np.int32)
    new_rows = new_of[rows[order]] if ncols else rows[order]
    new_parent = np.full(n, -1, dtype=np.int32)
    if n > 1:
        new_parent[1:] = new_of[parent[order][1:]]
    return new_rows, new_parent, edge[order].copy(), depth[order].copy(), order


def standardize_rows(rows: np.ndarray):
    """Renumber a complete table in breadth-first discovery order from 0.

    Column order within a row is (gen0, gen0^-1, gen1, ...), which fixes
    the numbering uniquely, so standardization is idempotent and two tables
    of the same group with the same generators coincide byte for byte.
    """
    new_rows, parent, edge, depth, _ = _standardize(rows)
    return new_rows, parent, edge, depth


class CayleyEngine:
    """A finite group on points 0..n-1 with right-multiplication columns."""

    def __init__(self, rows, gen_names, parent, edge, depth, name: str = "G"):
        self.rows = np.ascontiguousarray(rows, dtype=np.int32)
        self.num_points = int(self.rows.shape[0])
        self.gen_names = tuple(gen_names)
        self.ngens = len(self.gen_names)
        self.name = name
        self.cols = np.ascontiguousarray(self.rows.T)
        self.bfs_parent = parent
        self.bfs_edge = edge
        self.bfs_depth = depth
        self.gen_points = tuple(int(self.cols[2 * i, 0]) for i in range(self.ngens))
        self._word_cache: dict[int, tuple[int, ...]] = {0: ()}
        self._cols_py: list[array] | None = None
        self._left_letter: list[np.ndarray] | None = None
        self._classes: tuple | None = None
        self._orders: dict[int, int] = {0: 1}
        # set by quotient_engine on quotient results
        self.parent_points: np.ndarray | None = None
        self.parent_projection: np.ndarray | None = None

    @classmethod
    def from_columns(cls, rows, gen_names, name: str = "G") -> "CayleyEngine":
        new_rows, parent, edge, depth, _ = _standardize(rows)
        return cls(new_rows, gen_names, parent, edge, depth, name)

    # -- scalar element arithmetic ------------------------------------

    def _scalar_cols(self) -> list[array]:
        if self._cols_py is None:
            self._cols_py = [array("i", self.cols[c]) for c in range(2 * self.ngens)]
        return self._cols_py

    def word_cols(self, p: int) -> tuple[int, ...]:
        """Spanning-tree word for point p, as column indices from point 0."""
        cache = self._word_cache
        w = cache.get(p)
        if w is not None:
            return w
        chain = []
        q = p
        while q not in cache:
            chain.append(q)
            q = int(self.bfs_parent[q])
        w = cache[q]
        for t in reversed(chain):
            w = w + (int(self.bfs_edge[t]),)
            cache[t] = w
        return w

    def word_for(self, p: int) -> Word:
        return Word(
            tuple((c >> 1) + 1 if c & 1 == 0 else -((c >> 1) + 1) for c in self.word_cols(p))
        )

    def apply_word(self, p: int, wcols) -> int:
        cols = self._scalar_cols()
        for c in wcols:
            p = cols[c][p]
        return p

    def mul(self, p: int, q: int) -> int:
        return self.apply_word(p, self.word_cols(q))

    def inv(self, p: int) -> int:
        cols = self._scalar_cols()
        t = 0
        for c in reversed(self.word_cols(p)):
            t = cols[c ^ 1][t]
        return t

    def conj(self, p: int, q: int) -> int:
        """p^q = q^-1 * p * q."""
        return self.mul(self.mul(self.inv(q), p), q)

    def comm(self, p: int, q: int) -> int:
        """[p, q] = p^-1 * q^-1 * p * q."""
        return self.mul(self.mul(self.mul(self.inv(p), self.inv(q)), p), q)

    def order_of(self, p: int) -> int:
        """Element order = length of the cycle of point 0 under g_p."""
        cached = self._orders.get(p)
        if cached is not None:
            return cached
        w = self.word_cols(p)
        cols = self._scalar_cols()
        t = p
        k = 1
        while t != 0:
            for c in w:
                t = cols[c][t]
            k += 1
        self._orders[p] = k
        return k

    # -- vectorized machinery ------------------------------------------

    def apply_word_batch(self, pts: np.ndarray, wcols) -> np.ndarray:
        out = pts
        for c in wcols:
            out = self.cols[c][out]
        return out

    def _levels(self):
        if self.num_points <= 1:
            return
        depth = self.bfs_depth
        maxd = int(depth[-1])
        for d in range(1, maxd + 1):
            lo = int(np.searchsorted(depth, d))
            hi = int(np.searchsorted(depth, d + 1))
            yield np.arange(lo, hi, dtype=np.int32)

    def left_letter_perms(self) -> list[np.ndarray]:
        """Left-multiplication permutation for each column letter.

        Left and right multiplication commute, so L propagates down the
        spanning tree: L[p] = cols[edge(p)][L[parent(p)]].
        """
        if self._left_letter is not None:
            return self._left_letter
        ncols = 2 * self.ngens
        perms = [np.empty(self.num_points, dtype=np.int32) for _ in range(ncols)]
        for c in range(ncols):
            perms[c][0] = self.cols[c][0]
        for pts in self._levels():
            pas = self.bfs_parent[pts]
            eds = self.bfs_edge[pts]
            for e in np.unique(eds):
                m = eds == e
                tgt = pts[m]
                src = pas[m]
                col = self.cols[e]
                for c in range(ncols):
                    perms[c][tgt] = col[perms[c][src]]
        self._left_letter = perms
        return perms

    def left_perm(self, p: int) -> np.ndarray:
        """Permutation q -> p*q as an array."""
        letters = self.left_letter_perms()
        w = self.word_cols(p)
        if not w:
            return np.arange(self.num_points, dtype=np.int32)
        out = letters[w[-1]]
        for c in reversed(w[:-1]):
            out = letters[c][out]
        return out

    def conj_letter_perm(self, c: int) -> np.ndarray:
        """Permutation p -> p^(letter c)."""
        return self.cols[c][self.left_letter_perms()[c ^ 1]]

    def conjugacy_classes(self):
        """(class_id array, reps, sizes); classes ordered by least point."""
        if self._classes is not None:
            return self._classes
        n = self.num_points
        ncols = 2 * self.ngens
        perms = [array("i", self.conj_letter_perm(c)) for c in range(ncols)]
        class_id = np.full(n, -1, dtype=np.int32)
        reps = []
        sizes = []
        for p in range(n):
            if class_id[p] != -1:
                continue
            cid = len(reps)
            reps.append(p)
            class_id[p] = cid
            stack = [p]
            count = 1
            while stack:
                x = stack.pop()
                for perm in perms:
                    y = perm[x]
                    if class_id[y] == -1:
                        class_id[y] = cid
                        stack.append(y)
                        count += 1
            sizes.append(count)
        self._classes = (class_id, tuple(reps), tuple(sizes))
        return self._classes

    def __repr__(self):
        return f"CayleyEngine({self.name!r}, order={self.num_points})"


# -- subgroups ----------------------------------------------------------


@dataclass
class SubgroupSet:
    """A subgroup as a sorted point array plus generating points."""

    engine: CayleyEngine
    points: np.ndarray
    gens: tuple[int, ...]

    @property
    def order(self) -> int:
        return int(self.points.size)

    def contains(self, p: int) -> bool:
        i = int(np.searchsorted(self.points, p))
        return i < self.points.size and int(self.points[i]) == p

    def contains_all(self, pts: np.ndarray) -> bool:
        if pts.size == 0:
            return True
        idx = np.searchsorted(self.points, pts)
        if (idx >= self.points.size).any():
            return False
        return bool((self.points[idx] == pts).all())

    def __contains__(self, p) -> bool:
        return self.contains(int(p))

    def __repr__(self):
        return f"SubgroupSet(order={self.order}, gens={list(self.gens)})"


class _Closure:
    """Incrementally maintained orbit of the identity under right products."""

    def __init__(self, engine: CayleyEngine):
        self.engine = engine
        self.member = np.zeros(engine.num_points, dtype=bool)
        self.member[0] = True
        self.count = 1
        self.words: list[tuple[int, ...]] = []

    def _bfs(self, frontier: np.ndarray) -> None:
        e = self.engine
        while frontier.size:
            chunks = []
            for w in self.words:
                img = e.apply_word_batch(frontier, w)
                img = np.unique(img[~self.member[img]])
                if img.size:
                    self.member[img] = True
                    self.count += int(img.size)
                    chunks.append(img)
            frontier = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int32)

    def add_gen(self, p: int) -> None:
        if self.member[p]:
            return
        e = self.engine
        w = e.word_cols(p)
        self.words.extend([w, tuple(c ^ 1 for c in reversed(w))])
        current = np.nonzero(self.member)[0].astype(np.int32)
        img = e.apply_word_batch(current, w)
        img = np.unique(img[~self.member[img]])
        if img.size:
            self.member[img] = True
            self.count += int(img.size)
            self._bfs(img)

    def points(self) -> np.ndarray:
        return np.nonzero(self.member)[0].astype(np.int32)


def subgroup(engine: CayleyEngine, gens) -> SubgroupSet:
    """Closure of the identity under right multiplication by gens."""
    cl = _Closure(engine)
    kept = []
    for g in gens:
        g = int(g)
        if g != 0 and g not in kept:
            kept.append(g)
            cl.add_gen(g)
    return SubgroupSet(engine, cl.points(), tuple(kept))


def subgroup_from_points(engine: CayleyEngine, points, gens=None) -> SubgroupSet:
    """Wrap a known-closed point set, deriving a small generating set.

    Generators are chosen greedily in point order; the closure is rebuilt
    alongside, which certifies that the input set really is a subgroup.
    """
    points = np.unique(np.asarray(points, dtype=np.int32))
    if points.size == 0 or points[0] != 0:
        raise ValueError("subgroup point set must contain the identity")
    if gens is not None:
        sub = subgroup(engine, gens)
        if not np.array_equal(sub.points, points):
            raise ValueError("given generators do not generate the given points")
        return sub
    cl = _Closure(engine)
    kept: list[int] = []
    for p in points:
        p = int(p)
        if not cl.member[p]:
            kept.append(p)
            cl.add_gen(p)
    if cl.count != points.size or not cl.member[points].all():
        raise ValueError("point set is not closed under the group operation")
    return SubgroupSet(engine, points, tuple(kept))


def full_subgroup(engine: CayleyEngine) -> SubgroupSet:
    pts = np.arange(engine.num_points, dtype=np.int32)
    gens = tuple(dict.fromkeys(g for g in engine.gen_points if g != 0))
    return SubgroupSet(engine, pts, gens)


def trivial_subgroup(engine: CayleyEngine) -> SubgroupSet:
    return SubgroupSet(engine, np.zeros(1, dtype=np.int32), ())


def normal_closure(engine: CayleyEngine, seed, under) -> SubgroupSet:
    """Smallest subgroup containing seed closed under conjugation by the
    generators of `under` (fixed-point iteration of close/conjugate)."""
    conjugators = under.gens if isinstance(under, SubgroupSet) else tuple(under)
    cl = _Closure(engine)
    kept: list[int] = []
    pending = [int(s) for s in seed]
    while pending:
        for s in pending:
            if s != 0 and not cl.member[s]:
                kept.append(s)
                cl.add_gen(s)
        pending = []
        for s in kept:
            for c in conjugators:
                t = engine.conj(s, c)
                if not cl.member[t]:
                    pending.append(t)
    return SubgroupSet(engine, cl.points(), tuple(kept))


def commutator_subgroup(engine: CayleyEngine, H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    """[H, K]: normal closure in <H, K> of generator commutators."""
    seeds = []
    for h in H.gens:
        for k in K.gens:
            c = engine.comm(h, k)
            if c != 0:
                seeds.append(c)
    conjugators = tuple(dict.fromkeys(list(H.gens) + list(K.gens)))
    return normal_closure(engine, seeds, conjugators)


def iterated_commutator(engine: CayleyEngine, H: SubgroupSet, K: SubgroupSet, n: int) -> SubgroupSet:
    """[H, n K]: H for n = 0, else [[H, n-1 K], K]."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    out = H
    for _ in range(n):
        out = commutator_subgroup(engine, out, K)
    return out


def derived_series(engine: CayleyEngine, H: SubgroupSet) -> list[SubgroupSet]:
    """Successive derived subgroups, stopping at the first repeat."""
    series = [H]
    while True:
        nxt = commutator_subgroup(engine, series[-1], series[-1])
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
        if nxt.order == 1:
            break
    return series


def lower_central_series(engine: CayleyEngine, H: SubgroupSet) -> list[SubgroupSet]:
    series = [H]
    while True:
        nxt = commutator_subgroup(engine, series[-1], H)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
        if nxt.order == 1:
            break
    return series


def center(engine: CayleyEngine, H: SubgroupSet | None = None) -> SubgroupSet:
    """Elements of H commuting with every generator of H."""
    if H is None or H.order == engine.num_points:
        mask = np.ones(engine.num_points, dtype=bool)
        ident = np.arange(engine.num_points, dtype=np.int32)
        for i in range(engine.ngens):
            mask &= engine.conj_letter_perm(2 * i) == ident
        pts = np.nonzero(mask)[0].astype(np.int32)
    else:
        pts = np.array(
            [p for p in H.points if all(engine.comm(int(p), g) == 0 for g in H.gens)],
            dtype=np.int32,
        )
    return subgroup_from_points(engine, pts)


def intersection(H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    return subgroup_from_points(H.engine, np.intersect1d(H.points, K.points))


def product_points(H: SubgroupSet, K: SubgroupSet) -> np.ndarray:
    """The point set H*K (not necessarily a subgroup): orbit of H's points
    under right multiplication by K's generators."""
    e = H.engine
    member = np.zeros(e.num_points, dtype=bool)
    member[H.points] = True
    frontier = H.points
    words = []
    for k in K.gens:
        w = e.word_cols(k)
        words.extend([w, tuple(c ^ 1 for c in reversed(w))])
    while frontier.size:
        chunks = []
        for w in words:
            img = e.apply_word_batch(frontier, w)
            img = np.unique(img[~member[img]])
            if img.size:
                member[img] = True
                chunks.append(img)
        frontier = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int32)
    return np.nonzero(member)[0].astype(np.int32)


def product_set(H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    """H*K as a subgroup; raises if the product set is not closed."""
    e = H.engine
    pts = product_points(H, K)
    member = np.zeros(e.num_points, dtype=bool)
    member[pts] = True
    for g in dict.fromkeys(list(H.gens) + list(K.gens)):
        img = e.apply_word_batch(pts, e.word_cols(g))
        if not member[img].all():
            raise ValueError("product set is not a subgroup (one factor must normalize the other)")
    gens = tuple(dict.fromkeys(list(H.gens) + list(K.gens)))
    return SubgroupSet(e, pts, gens)


def subgroups_equal(H: SubgroupSet, K: SubgroupSet) -> bool:
    return H.points.size == K.points.size and bool(np.array_equal(H.points, K.points))


def exponent(engine: CayleyEngine, H: SubgroupSet | None = None) -> int:
    """lcm of element orders over H (default: the whole group)."""
    if H is not None and H.order != engine.num_points:
        if H.order > 50_000:
            return exponent(sub_engine(engine, H))
        out = 1
        for p in H.points:
            out = math.lcm(out, engine.order_of(int(p)))
        return out
    _, reps, _ = engine.conjugacy_classes()
    out = 1
    for r in reps:
        out = math.lcm(out, engine.order_of(r))
    return out


def _coset_partition(engine: CayleyEngine, H: SubgroupSet, N: SubgroupSet):
    """Partition H's points into cosets N*h: (coset_of, reps), cosets
    numbered by minimal representative in increasing order."""
    coset_of = np.full(engine.num_points, -1, dtype=np.int64)
    perms = [array("i", engine.left_perm(int(g))) for g in N.gens]
    reps = []
    for p in H.points:
        p = int(p)
        if coset_of[p] != -1:
            continue
        cid = len(reps)
        reps.append(p)
        coset_of[p] = cid
        stack = [p]
        while stack:
            x = stack.pop()
            for perm in perms:
                y = perm[x]
                if coset_of[y] == -1:
                    coset_of[y] = cid
                    stack.append(y)
    return coset_of, np.array(reps, dtype=np.int32)


def quotient_engine(engine: CayleyEngine, H: SubgroupSet, N: SubgroupSet) -> CayleyEngine:
    """Regular representation of H/N (N must be normal in H).

    The result carries `parent_points` (H's points) and `parent_projection`
    (the induced point map, aligned with parent_points).
    """
    if not H.contains_all(N.points):
        raise ValueError("N is not contained in H")
    for ng in N.gens:
        for hg in H.gens:
            if not N.contains(engine.conj(ng, hg)):
                raise ValueError("N is not normal in H")
    if N.order == 1:
        nq = H.order
        coset_of = np.full(engine.num_points, -1, dtype=np.int64)
        coset_of[H.points] = np.arange(nq)
        reps = H.points
    else:
        coset_of, reps = _coset_partition(engine, H, N)
        nq = int(reps.size)
    qgens = []
    for hg in H.gens:
        img = int(coset_of[hg])
        if img != 0 and img not in qgens:
            qgens.append(img)
    qrows = np.empty((nq, 2 * len(qgens)), dtype=np.int32)
    for j, qg in enumerate(qgens):
        g_point = int(reps[qg])
        col = coset_of[engine.apply_word_batch(reps, engine.word_cols(g_point))]
        qrows[:, 2 * j] = col
        inv_col = np.empty(nq, dtype=np.int32)
        inv_col[col] = np.arange(nq, dtype=np.int32)
        qrows[:, 2 * j + 1] = inv_col
    new_rows, parent, edge, depth, order = _standardize(qrows)
    names = tuple(f"q{j}" for j in range(len(qgens)))
    out = CayleyEngine(new_rows, names, parent, edge, depth, name=f"{engine.name}/N")
    old_to_new = np.empty(nq, dtype=np.int64)
    old_to_new[order] = np.arange(nq)
    out.parent_points = H.points
    out.parent_projection = old_to_new[coset_of[H.points]].astype(np.int32)
    return out


def sub_engine(engine: CayleyEngine, H: SubgroupSet) -> CayleyEngine:
    """Regular representation of H itself."""
    return quotient_engine(engine, H, trivial_subgroup(engine))


def abelian_invariants(engine: CayleyEngine, H: SubgroupSet | None = None) -> list[int]:
    """Primary decomposition of an abelian subgroup, as sorted prime powers.

    Layer counts s_i = #{h : h^(p^i) = 1} determine the multiset of cyclic
    p-power factors for each prime p dividing the order.
    """
    if H is None:
        H = full_subgroup(engine)
    for i, a in enumerate(H.gens):
        for b in H.gens[i + 1:]:
            if engine.comm(a, b) != 0:
                raise ValueError("subgroup is not abelian")
    if H.order == 1:
        return []
    orders = [engine.order_of(int(p)) for p in H.points]
    out = []
    for p in _prime_factors(H.order):
        layers = [1]
        i = 1
        while True:
            pk = p ** i
            s = sum(1 for o in orders if pk % o == 0)
            if s == layers[-1]:
                break
            layers.append(s)
            i += 1
        logs = [round(math.log(s, p)) for s in layers]
        m = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for k in range(1, len(m) + 1):
            count = m[k - 1] - (m[k] if k < len(m) else 0)
            out.extend([p ** k] * count)
    return sorted(out)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- homomorphisms ------------------------------------------------------


class HomCertificationError(ValueError):
    """Generator-image assignment does not extend to a homomorphism."""

    def __init__(self, closure_order: int, domain_order: int):
        super().__init__(
            f"closure of paired generators has order {closure_order}, "
            f"domain has order {domain_order}: map is not well-defined"
        )
        self.closure_order = closure_order
        self.domain_order = domain_order


@dataclass
class Homomorphism:
    """A certified homomorphism, stored as its graph.

    The graph is the subgroup of the direct product of domain and codomain
    generated by the paired generators; the assignment extends to a
    homomorphism exactly when that subgroup has the domain's order, in
    which case it is single-valued and kept here as a point map.
    """

    domain: CayleyEngine
    codomain: CayleyEngine
    dom_gens: tuple[int, ...]
    images: tuple[int, ...]
    graph: np.ndarray  # domain point -> codomain point

    def apply(self, p: int) -> int:
        return int(self.graph[p])

    def image(self) -> SubgroupSet:
        return subgroup_from_points(self.codomain, np.unique(self.graph))

    def kernel(self) -> SubgroupSet:
        return subgroup_from_points(self.domain, np.nonzero(self.graph == 0)[0])

    def is_bijective(self) -> bool:
        return (
            self.domain.num_points == self.codomain.num_points
            and int(np.unique(self.graph).size) == self.domain.num_points
        )


def hom_from_gen_images(domE: CayleyEngine, dom_gens, codE: CayleyEngine, images) -> Homomorphism:
    """Certify a generator-image assignment by closing the paired generators.

    Raises HomCertificationError carrying the closure order when the pairs
    close to something bigger than the domain, ValueError when dom_gens do
    not generate the domain.
    """
    dom_gens = tuple(int(g) for g in dom_gens)
    images = tuple(int(g) for g in images)
    if len(dom_gens) != len(images):
        raise ValueError("generator and image counts differ")
    n = domE.num_points
    graph = np.full(n, -1, dtype=np.int64)
    graph[0] = 0
    fd = np.array([0], dtype=np.int64)
    pairs = [(domE.word_cols(d), codE.word_cols(c)) for d, c in zip(dom_gens, images)]
    conflict = False
    while fd.size and not conflict:
        chunks = []
        for wd, wc in pairs:
            nd = domE.apply_word_batch(fd, wd)
            nc = codE.apply_word_batch(graph[fd].astype(np.int64), wc)
            known = graph[nd]
            if ((known != -1) & (known != nc)).any():
                conflict = True
                break
            fresh = known == -1
            if fresh.any():
                nd, nc = nd[fresh], nc[fresh]
                nd, first = np.unique(nd, return_index=True)
                graph[nd] = nc[first]
                chunks.append(nd.astype(np.int64))
        if conflict:
            break
        fd = np.concatenate(chunks) if chunks else np.empty(0, np.int64)
    if not conflict and (graph == -1).any():
        raise ValueError("dom_gens do not generate the domain")
    if not conflict:
        # soundness sweep: also catches conflicting duplicates within a batch
        all_pts = np.arange(n, dtype=np.int64)
        for wd, wc in pairs:
            if not np.array_equal(graph[domE.apply_word_batch(all_pts, wd)],
                                  codE.apply_word_batch(graph, wc)):
                conflict = True
                break
    if conflict:
        raise HomCertificationError(_pair_closure_order(domE, codE, dom_gens, images), n)
    return Homomorphism(domE, codE, dom_gens, images, graph.astype(np.int32))


def _pair_closure_order(domE, codE, dom_gens, images, cap: int = 1_000_000) -> int:
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for d, c in frontier:
            for gd, gc in zip(dom_gens, images):
                pair = (domE.mul(d, gd), codE.mul(c, gc))
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
                    if len(seen) > cap:
                        return len(seen)
        frontier = nxt
    return len(seen)


# -- fingerprints and products -------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism-invariant summary of a finite group.

    Equal fingerprints are necessary but not sufficient for isomorphism;
    comparisons through this type are reported as fingerprint-isomorphic,
    never as certified isomorphisms.
    """

    order: int
    exponent: int
    abelianization: tuple[int, ...]
    derived_length: int | None
    nilpotency_class: int | None
    center_order: int
    conjugacy_class_sizes: tuple[int, ...]
    element_order_histogram: tuple[tuple[int, int], ...]


def fingerprint(engine: CayleyEngine, H: SubgroupSet | None = None) -> Fingerprint:
    if H is not None and H.order != engine.num_points:
        return fingerprint(sub_engine(engine, H))
    full = full_subgroup(engine)
    _, reps, sizes = engine.conjugacy_classes()
    exp = 1
    hist: dict[int, int] = {}
    for r, s in zip(reps, sizes):
        o = engine.order_of(r)
        exp = math.lcm(exp, o)
        hist[o] = hist.get(o, 0) + s
    dseries = derived_series(engine, full)
    lseries = lower_central_series(engine, full)
    derived = dseries[1] if len(dseries) > 1 else trivial_subgroup(engine)
    ab = abelian_invariants(quotient_engine(engine, full, derived))
    return Fingerprint(
        order=engine.num_points,
        exponent=exp,
        abelianization=tuple(ab),
        derived_length=len(dseries) - 1 if dseries[-1].order == 1 else None,
        nilpotency_class=len(lseries) - 1 if lseries[-1].order == 1 else None,
        center_order=center(engine).order,
        conjugacy_class_sizes=tuple(sorted(sizes)),
        element_order_histogram=tuple(sorted(hist.items())),
    )


def direct_product_engine(*engines: CayleyEngine, cap: int = 2_000_000) -> CayleyEngine:
    """Componentwise action on the cartesian point set."""
    total = 1
    for e in engines:
        total *= e.num_points
    if total > cap:
        raise ValueError(f"direct product has {total} points, exceeding the cap {cap}")
    out = engines[0]
    for e in engines[1:]:
        out = _product_of_two(out, e)
    return out


def _product_of_two(A: CayleyEngine, B: CayleyEngine) -> CayleyEngine:
    na, nb = A.num_points, B.num_points
    n = na * nb
    ga, gb = A.ngens, B.ngens
    rows = np.empty((n, 2 * (ga + gb)), dtype=np.int32)
    pa, pb = np.divmod(np.arange(n, dtype=np.int64), nb)
    for c in range(2 * ga):
        rows[:, c] = A.cols[c][pa] * nb + pb
    for c in range(2 * gb):
        rows[:, 2 * ga + c] = pa * nb + B.cols[c][pb]
    names = tuple(f"a{i}" for i in range(ga)) + tuple(f"b{i}" for i in range(gb))
    return CayleyEngine.from_columns(rows, names, name=f"{A.name}x{B.name}")
