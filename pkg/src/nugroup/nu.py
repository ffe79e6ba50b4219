"""Construction of nu(G) and its distinguished subgroups.

nu(G) is generated by two copies of G (the second written g^phi) subject
to, for every triple (g1, g2, g3), the compatibility relations

    [g1, g2^phi]^(g3) = [g1^(g3), (g2^(g3))^phi] = [g1, g2^phi]^(g3^phi)

together with the relations of both copies.  The subgroup [G, G^phi] of
nu(G) realizes the tensor square of G, which is what makes the
construction computationally useful.

Two instantiation strategies are supported for the triple relations:
`gens` quantifies over generating-set triples (the scalable route),
`cayley` over all non-identity element triples of a realized engine
(unconditionally faithful).  Cross-validating the two on small groups is
part of the verification suite.
"""

from __future__ import annotations

import numpy as np

from .coset import EnumLimits, enumerate_presentation, to_regular_engine
from .engine import (
    CayleyEngine,
    Homomorphism,
    SubgroupSet,
    _Closure,
    commutator_subgroup,
    full_subgroup,
    hom_from_gen_images,
    intersection,
    iterated_commutator,
    lower_central_series,
    sub_engine,
    subgroup,
    subgroup_from_points,
    subgroups_equal,
)
from .words import Presentation, Word, cayley_presentation, word_commutator, word_conjugate

__all__ = ["NuContext", "NuBuildError", "build_nu", "build_nu_presentation", "CAYLEY_ORDER_CAP"]

CAYLEY_ORDER_CAP = 64


class NuBuildError(RuntimeError):
    """A structural invariant of the construction failed; the built table
    cannot be trusted."""


def _phi_shift(word: Word, k: int) -> Word:
    """Rewrite a word in the first copy's generators into the phi copy."""
    return Word(tuple(v + k if v > 0 else v - k for v in word.signed))


def _triple_relators(x: Word, yphi: Word, z: Word, zphi: Word, mid: Word | None = None) -> list[Word]:
    """Two relators for one instantiated defining relation.

    mid overrides the middle term [x^z, (y^z)^phi] when the conjugates are
    already resolved to shorter words.
    """
    a = word_conjugate(word_commutator(x, yphi), z)
    b = mid if mid is not None else word_commutator(word_conjugate(x, z), word_conjugate(yphi, zphi))
    c = word_conjugate(word_commutator(x, yphi), zphi)
    return [a * b.inverse(), a * c.inverse()]


def build_nu_presentation(source, strategy: str = "gens") -> Presentation:
    """Presentation of nu(G).

    `gens`: source is a Presentation of G; the defining relations are
    instantiated over generator triples.  `cayley`: source is a realized
    CayleyEngine of order <= CAYLEY_ORDER_CAP + 1; generators are the
    non-identity elements and the relations are instantiated over all
    element triples.
    """
    if strategy == "gens":
        pres: Presentation = source
        k = pres.ngens
        gens = tuple(pres.generators) + tuple(g + "_phi" for g in pres.generators)
        relators = list(pres.relators)
        relators += [_phi_shift(r, k) for r in pres.relators]
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    relators += _triple_relators(
                        Word.gen(i), Word.gen(k + j), Word.gen(l), Word.gen(k + l)
                    )
        return Presentation(f"nu_{pres.name}", gens, tuple(relators))
    if strategy == "cayley":
        engine: CayleyEngine = source
        base = cayley_presentation(engine, max_gens=CAYLEY_ORDER_CAP)
        n = engine.num_points
        k = n - 1
        gens = tuple(base.generators) + tuple(g + "_phi" for g in base.generators)
        relators = list(base.relators)
        relators += [_phi_shift(r, k) for r in base.relators]

        def elt(p: int) -> Word:  # element p as a single letter (identity: empty)
            return Word.gen(p - 1) if p else Word()

        for g1 in range(1, n):
            x = elt(g1)
            for g2 in range(1, n):
                yphi = _phi_shift(elt(g2), k)
                for g3 in range(1, n):
                    z = elt(g3)
                    mid = word_commutator(
                        elt(engine.conj(g1, g3)), _phi_shift(elt(engine.conj(g2, g3)), k)
                    )
                    relators += _triple_relators(x, yphi, z, _phi_shift(z, k), mid=mid)
        return Presentation(f"nu_{engine.name}", gens, tuple(relators))
    raise ValueError(f"unknown strategy {strategy!r}")


class NuContext:
    """A built nu(G): engines, embeddings, the folding and swap maps, and
    lazily computed distinguished subgroups.

    Immutable after construction; the subgroup cache fills on demand and
    every cached subgroup is validated against an independent second
    computation wherever the construction provides one (mismatch raises
    NuBuildError: it signals a corrupt table or a wrong presentation).
    """

    def __init__(
        self,
        base: CayleyEngine,
        base_pres: Presentation,
        nu: CayleyEngine,
        strategy: str,
    ):
        self.base = base
        self.base_pres = base_pres
        self.nu = nu
        self.strategy = strategy
        half = nu.ngens // 2
        self.g_gens = nu.gen_points[:half]
        self.gphi_gens = nu.gen_points[half:]
        self._cache: dict = {}
        self._embed()
        self.rho = self._certify_rho()
        self.psi = self._certify_psi()
        self._check_invariants()

    # -- embeddings -----------------------------------------------------

    def _embed(self) -> None:
        n = self.base.num_points
        g_embed = np.empty(n, dtype=np.int64)
        gphi_embed = np.empty(n, dtype=np.int64)
        shift = self.nu.ngens  # phi copy column offset = 2 * half
        for p in range(n):
            if self.strategy == "cayley":
                wcols = () if p == 0 else (2 * (p - 1),)
            else:
                wcols = self.base.word_cols(p)
            g_embed[p] = self.nu.apply_word(0, wcols)
            gphi_embed[p] = self.nu.apply_word(0, tuple(c + shift for c in wcols))
        if len(set(g_embed.tolist())) != n or len(set(gphi_embed.tolist())) != n:
            raise NuBuildError("a copy of G does not embed faithfully in nu(G)")
        self.g_embed = g_embed
        self.gphi_embed = gphi_embed

    def embed_g(self, p: int) -> int:
        """nu-point of the element p of G (first copy)."""
        return int(self.g_embed[p])

    def embed_gphi(self, p: int) -> int:
        """nu-point of the element p^phi (second copy)."""
        return int(self.gphi_embed[p])

    # -- certified maps --------------------------------------------------

    def _base_gen_points(self) -> list[int]:
        if self.strategy == "cayley":
            return list(range(1, self.base.num_points))
        return list(self.base.gen_points)

    def _certify_rho(self) -> Homomorphism:
        images = self._base_gen_points()
        try:
            return hom_from_gen_images(
                self.nu, self.g_gens + self.gphi_gens, self.base, images + images
            )
        except ValueError as exc:
            raise NuBuildError(f"folding map rho failed certification: {exc}") from exc

    def _certify_psi(self) -> Homomorphism:
        try:
            return hom_from_gen_images(
                self.nu,
                self.g_gens + self.gphi_gens,
                self.nu,
                self.gphi_gens + self.g_gens,
            )
        except ValueError as exc:
            raise NuBuildError(f"swap map psi failed certification: {exc}") from exc

    def psi_points(self, pts: np.ndarray) -> np.ndarray:
        return np.sort(self.psi.graph[pts])

    # -- invariants -----------------------------------------------------

    def _check_invariants(self) -> None:
        rho = self.rho.graph
        ident = np.arange(self.base.num_points)
        if not (
            np.array_equal(rho[self.g_embed], ident)
            and np.array_equal(rho[self.gphi_embed], ident)
        ):
            raise NuBuildError("rho does not fold both copies onto G")
        psi = self.psi.graph
        if not np.array_equal(psi[psi], np.arange(self.nu.num_points)):
            raise NuBuildError("psi is not an involution")
        if not np.array_equal(np.sort(psi[self.g_embed]), np.sort(self.gphi_embed)):
            raise NuBuildError("psi does not swap the two copies of G")
        expected = self.base.num_points ** 2 * self.upsilon1().order
        if self.nu.num_points != expected:
            raise NuBuildError(
                f"|nu| = {self.nu.num_points} but |G|^2 * |[G,G^phi]| = {expected}"
            )

    # -- distinguished subgroups -----------------------------------------

    def g_sub(self) -> SubgroupSet:
        if "g_sub" not in self._cache:
            gens = tuple(dict.fromkeys(g for g in self.g_gens if g != 0))
            self._cache["g_sub"] = SubgroupSet(
                self.nu, np.sort(self.g_embed).astype(np.int32), gens
            )
        return self._cache["g_sub"]

    def gphi_sub(self) -> SubgroupSet:
        if "gphi_sub" not in self._cache:
            gens = tuple(dict.fromkeys(g for g in self.gphi_gens if g != 0))
            self._cache["gphi_sub"] = SubgroupSet(
                self.nu, np.sort(self.gphi_embed).astype(np.int32), gens
            )
        return self._cache["gphi_sub"]

    def nu_full(self) -> SubgroupSet:
        if "nu_full" not in self._cache:
            self._cache["nu_full"] = full_subgroup(self.nu)
        return self._cache["nu_full"]

    def nu_derived(self) -> SubgroupSet:
        if "nu_derived" not in self._cache:
            self._cache["nu_derived"] = commutator_subgroup(
                self.nu, self.nu_full(), self.nu_full()
            )
        return self._cache["nu_derived"]

    def upsilon1(self) -> SubgroupSet:
        """[G, G^phi], with generators tracked as labeled element pairs.

        Conjugating [g, h^phi] by either copy of x gives [g^x, (h^x)^phi],
        so the normal closure can carry (g, h) labels; the labels are what
        makes the map to [Theta, G] computable generator by generator.
        """
        if "upsilon1" not in self._cache:
            e = self.nu
            labeled: dict[int, tuple[int, int]] = {}
            kept: list[int] = []
            cl = _Closure(e)
            if self.strategy == "cayley":
                pending = [
                    (g, h)
                    for g in range(1, self.base.num_points)
                    for h in range(1, self.base.num_points)
                ]
            else:
                pending = [(g, h) for g in self.base.gen_points for h in self.base.gen_points]
            while pending:
                for (g, h) in pending:
                    pt = e.comm(self.embed_g(g), self.embed_gphi(h))
                    if pt != 0 and not cl.member[pt]:
                        labeled[pt] = (g, h)
                        kept.append(pt)
                        cl.add_gen(pt)
                pending = []
                for pt in kept:
                    g, h = labeled[pt]
                    for x in self._base_gen_points():
                        g2 = self.base.conj(g, x)
                        h2 = self.base.conj(h, x)
                        if not cl.member[e.comm(self.embed_g(g2), self.embed_gphi(h2))]:
                            pending.append((g2, h2))
            self._cache["upsilon1"] = SubgroupSet(e, cl.points(), tuple(kept))
            self._cache["upsilon1_labels"] = dict(labeled)
        return self._cache["upsilon1"]

    def upsilon1_labels(self) -> dict[int, tuple[int, int]]:
        self.upsilon1()
        return self._cache["upsilon1_labels"]

    def theta(self) -> SubgroupSet:
        """Kernel of the folding map rho."""
        if "theta" not in self._cache:
            self._cache["theta"] = self.rho.kernel()
        return self._cache["theta"]

    def mu(self) -> SubgroupSet:
        """Kernel of rho restricted to [G, G^phi]; computed two ways
        (set intersection with Theta, and kernel of the certified
        restriction) and asserted equal."""
        if "mu" not in self._cache:
            u1 = self.upsilon1()
            via_intersection = intersection(u1, self.theta())
            u1e = self.u1_engine()
            proj = u1e.parent_projection
            dom_gens = [int(proj[np.searchsorted(u1.points, g)]) for g in u1.gens]
            images = [int(self.rho.graph[g]) for g in u1.gens]
            restricted = hom_from_gen_images(u1e, dom_gens, self.base, images)
            inv = np.empty(u1.order, dtype=np.int64)
            inv[proj] = np.arange(u1.order)
            ker_nu = np.sort(u1.points[inv[restricted.kernel().points]])
            via_kernel = subgroup_from_points(self.nu, ker_nu)
            if not subgroups_equal(via_intersection, via_kernel):
                raise NuBuildError("mu computed via intersection and via kernel disagree")
            self._cache["mu"] = via_intersection
        return self._cache["mu"]

    def delta(self) -> SubgroupSet:
        """Diagonal subgroup, generated by [g, g^phi] over every g in G."""
        if "delta" not in self._cache:
            seeds = [
                self.nu.comm(self.embed_g(p), self.embed_gphi(p))
                for p in range(self.base.num_points)
            ]
            self._cache["delta"] = subgroup(self.nu, [s for s in seeds if s != 0])
        return self._cache["delta"]

    def gamma_pairs(self) -> dict[tuple[int, int], int]:
        """Gamma(g, h) = [g,h][h,g^phi] as nu points, for all element pairs."""
        if "gamma_pairs" not in self._cache:
            n = self.base.num_points
            tab = {}
            for g in range(n):
                eg = self.embed_g(g)
                egphi = self.embed_gphi(g)
                for h in range(n):
                    eh = self.embed_g(h)
                    tab[(g, h)] = self.nu.mul(self.nu.comm(eg, eh), self.nu.comm(eh, egphi))
            self._cache["gamma_pairs"] = tab
        return self._cache["gamma_pairs"]

    def upsilon2(self) -> SubgroupSet:
        """[Theta, G]; asserted equal to <[g,h][h,g^phi] over all pairs>."""
        if "upsilon2" not in self._cache:
            u2 = commutator_subgroup(self.nu, self.theta(), self.g_sub())
            alt = subgroup(self.nu, [pt for pt in self.gamma_pairs().values() if pt != 0])
            if not subgroups_equal(u2, alt):
                raise NuBuildError("[Theta,G] disagrees with its generator form")
            self._cache["upsilon2"] = u2
        return self._cache["upsilon2"]

    def upsilon3(self) -> SubgroupSet:
        """[Theta, G^phi]; asserted equal to its generator form and to the
        psi image of [Theta, G]."""
        if "upsilon3" not in self._cache:
            u3 = commutator_subgroup(self.nu, self.theta(), self.gphi_sub())
            n = self.base.num_points
            seeds = []
            for g in range(n):
                egphi = self.embed_gphi(g)
                eg = self.embed_g(g)
                for h in range(n):
                    ehphi = self.embed_gphi(h)
                    seeds.append(self.nu.mul(self.nu.comm(egphi, ehphi), self.nu.comm(ehphi, eg)))
            alt = subgroup(self.nu, [s for s in seeds if s != 0])
            if not subgroups_equal(u3, alt):
                raise NuBuildError("[Theta,G^phi] disagrees with its generator form")
            if not np.array_equal(self.psi_points(self.upsilon2().points), u3.points):
                raise NuBuildError("[Theta,G^phi] is not the psi image of [Theta,G]")
            self._cache["upsilon3"] = u3
        return self._cache["upsilon3"]

    def u1_engine(self) -> CayleyEngine:
        if "u1_engine" not in self._cache:
            self._cache["u1_engine"] = sub_engine(self.nu, self.upsilon1())
        return self._cache["u1_engine"]

    def u2_engine(self) -> CayleyEngine:
        if "u2_engine" not in self._cache:
            self._cache["u2_engine"] = sub_engine(self.nu, self.upsilon2())
        return self._cache["u2_engine"]

    def gamma_star(self) -> Homomorphism:
        """The certified map [G,G^phi] -> [Theta,G], [g,h^phi] -> [g,h][h,g^phi].

        Domain and codomain are the sub-engines; certification failure is a
        hard error since the map is forced by the defining relations.
        """
        if "gamma_star" not in self._cache:
            u1, u2 = self.upsilon1(), self.upsilon2()
            u1e, u2e = self.u1_engine(), self.u2_engine()
            labels = self.upsilon1_labels()
            gamma = self.gamma_pairs()
            p1, p2 = u1e.parent_projection, u2e.parent_projection
            dom_gens, images = [], []
            for pt in u1.gens:
                g, h = labels[pt]
                img = gamma[(g, h)]
                if not u2.contains(img):
                    raise NuBuildError("Gamma value escapes [Theta,G]")
                dom_gens.append(int(p1[np.searchsorted(u1.points, pt)]))
                images.append(int(p2[np.searchsorted(u2.points, img)]))
            try:
                self._cache["gamma_star"] = hom_from_gen_images(u1e, dom_gens, u2e, images)
            except ValueError as exc:
                raise NuBuildError(f"tensor map Gamma* failed certification: {exc}") from exc
        return self._cache["gamma_star"]

    def gamma_star_apply_nu(self, p: int) -> int:
        """Gamma* evaluated between nu-point sets."""
        gs = self.gamma_star()
        u1, u2 = self.upsilon1(), self.upsilon2()
        u1e, u2e = self.u1_engine(), self.u2_engine()
        if "u2_inv_proj" not in self._cache:
            inv = np.empty(u2.order, dtype=np.int64)
            inv[u2e.parent_projection] = np.arange(u2.order)
            self._cache["u2_inv_proj"] = inv
        dom_pt = int(u1e.parent_projection[np.searchsorted(u1.points, p)])
        return int(u2.points[self._cache["u2_inv_proj"][gs.apply(dom_pt)]])

    # -- embedded series and bracket sets ---------------------------------

    def base_lcs_embedded(self) -> list[SubgroupSet]:
        """Lower central series of the embedded first copy of G."""
        if "base_lcs" not in self._cache:
            self._cache["base_lcs"] = lower_central_series(self.nu, self.g_sub())
        return self._cache["base_lcs"]

    def gamma_set(self, k: int) -> list[int]:
        """Left-normed k-fold brackets of G as base points; k = 1 is G."""
        cache = self._cache.setdefault("gamma_sets", {})
        if k not in cache:
            if k == 1:
                cache[1] = list(range(self.base.num_points))
            else:
                out = set()
                for c in self.gamma_set(k - 1):
                    for g in range(self.base.num_points):
                        out.add(self.base.comm(c, g))
                cache[k] = sorted(out)
        return cache[k]

    def abc_subgroups(self, k: int) -> tuple[SubgroupSet, SubgroupSet, SubgroupSet]:
        """(A_k, B_k, C_k) with the alternative forms asserted:

        A_k = [[G,G^phi], k-1 G]        = [gamma_k(G), G^phi]
        B_k = [[Theta,G], k-1 G]        = <[c,x][x,c^phi] : c k-bracket, x in G>
        C_k = [[Theta,G^phi], k-1 G^phi] = psi(B_k) and its own bracket form.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        cache = self._cache.setdefault("abc", {})
        if k not in cache:
            e = self.nu
            A = iterated_commutator(e, self.upsilon1(), self.g_sub(), k - 1)
            lcs = self.base_lcs_embedded()
            gamma_k = lcs[min(k - 1, len(lcs) - 1)]
            alt_A = commutator_subgroup(e, gamma_k, self.gphi_sub())
            if not subgroups_equal(A, alt_A):
                raise NuBuildError(f"A_{k} disagrees with [gamma_{k}(G), G^phi]")

            B = iterated_commutator(e, self.upsilon2(), self.g_sub(), k - 1)
            seeds = []
            for c in self.gamma_set(k):
                ec, ecphi = self.embed_g(c), self.embed_gphi(c)
                for x in range(self.base.num_points):
                    ex = self.embed_g(x)
                    seeds.append(e.mul(e.comm(ec, ex), e.comm(ex, ecphi)))
            alt_B = subgroup(e, [s for s in seeds if s])
            if not subgroups_equal(B, alt_B):
                raise NuBuildError(f"B_{k} disagrees with its bracket-set generator form")

            C = iterated_commutator(e, self.upsilon3(), self.gphi_sub(), k - 1)
            seeds = []
            for c in self.gamma_set(k):
                ec, ecphi = self.embed_g(c), self.embed_gphi(c)
                for x in range(self.base.num_points):
                    exphi = self.embed_gphi(x)
                    seeds.append(e.mul(e.comm(ecphi, exphi), e.comm(exphi, ec)))
            alt_C = subgroup(e, [s for s in seeds if s])
            if not subgroups_equal(C, alt_C):
                raise NuBuildError(f"C_{k} disagrees with its bracket-set generator form")
            if not np.array_equal(self.psi_points(B.points), C.points):
                raise NuBuildError(f"C_{k} is not the psi image of B_{k}")
            cache[k] = (A, B, C)
        return cache[k]


def build_nu(
    pres: Presentation,
    strategy: str = "gens",
    limits: EnumLimits | None = None,
    base_engine: CayleyEngine | None = None,
) -> NuContext:
    """Enumerate G and nu(G) and assemble a verified NuContext."""
    if base_engine is None:
        base_engine = to_regular_engine(enumerate_presentation(pres, limits), pres)
    if strategy == "cayley" and base_engine.num_points - 1 > CAYLEY_ORDER_CAP:
        raise ValueError(
            f"cayley strategy capped at {CAYLEY_ORDER_CAP} generators, group has order {base_engine.num_points}"
        )
    source = base_engine if strategy == "cayley" else pres
    nu_pres = build_nu_presentation(source, strategy)
    nu_table = enumerate_presentation(nu_pres, limits)
    nu_engine = to_regular_engine(nu_table, nu_pres)
    return NuContext(base_engine, pres, nu_engine, strategy)
