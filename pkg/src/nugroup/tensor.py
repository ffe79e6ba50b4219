"""Brute-force tensor-square oracle.

Builds the defining presentation of G (x) G on one symbol per ordered pair
of group elements and enumerates it.  Deliberately independent of the
nu-construction machinery: this is the cross-check, not a production path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coset import EnumLimits, enumerate_presentation, to_regular_engine
from .engine import CayleyEngine
from .words import Presentation, Word

__all__ = ["tensor_presentation", "tensor_square", "biderivation_check", "BiderivationResult"]

TENSOR_ORDER_CAP = 16


@dataclass(frozen=True)
class BiderivationResult:
    """Truthy iff both axioms held; carries the failing quadruple if not."""

    ok: bool
    witness: dict | None
    mode: str

    def __bool__(self) -> bool:
        return self.ok


def tensor_presentation(G: CayleyEngine, cap: int = TENSOR_ORDER_CAP) -> Presentation:
    """Presentation on generators t(g,h) for all ordered element pairs.

    Relator families, one per element triple:
        t(g*g1, h)^-1  * t(g^g1, h^g1) * t(g1, h)
        t(g, h*h1)^-1  * t(g, h1)      * t(g^h1, h^h1)
    Pairs with identity components are included; the relators collapse
    them, no special-casing.
    """
    n = G.num_points
    if n > cap:
        raise ValueError(f"group order {n} exceeds the tensor oracle cap {cap}")

    def sym(g: int, h: int) -> int:  # 1-based generator letter for t(g,h)
        return g * n + h + 1

    relators = []
    for g in range(n):
        for g1 in range(n):
            gg1 = G.mul(g, g1)
            cg = G.conj(g, g1)
            for h in range(n):
                relators.append(
                    Word((-sym(gg1, h), sym(cg, G.conj(h, g1)), sym(g1, h)))
                )
    for g in range(n):
        for h in range(n):
            for h1 in range(n):
                relators.append(
                    Word((-sym(g, G.mul(h, h1)), sym(g, h1), sym(G.conj(g, h1), G.conj(h, h1))))
                )
    names = tuple(f"t_{g}_{h}" for g in range(n) for h in range(n))
    return Presentation(f"tensor_{G.name}", names, tuple(relators))


def tensor_square(G: CayleyEngine, limits: EnumLimits | None = None, cap: int = TENSOR_ORDER_CAP) -> CayleyEngine:
    """The tensor square of G as a realized group, via pure enumeration."""
    pres = tensor_presentation(G, cap=cap)
    table = enumerate_presentation(pres, limits)
    return to_regular_engine(table, pres)


def biderivation_check(
    G: CayleyEngine,
    f,
    L: CayleyEngine,
    *,
    max_exhaustive: int = 12,
    samples: int = 100_000,
    seed: int = 0,
) -> BiderivationResult:
    """Check the two crossed-pairing axioms for f : G x G -> L.

        f(a*a1, b) = f(a^a1, b^a1) * f(a1, b)
        f(a, b*b1) = f(a, b1) * f(a^b1, b^b1)

    Exhaustive over all quadruples when |G| <= max_exhaustive, otherwise a
    seeded sample of `samples` quadruples.
    """
    n = G.num_points
    ftab = {(a, b): f(a, b) for a in range(n) for b in range(n)}

    def axiom1(a, a1, b):
        lhs = ftab[(G.mul(a, a1), b)]
        rhs = L.mul(ftab[(G.conj(a, a1), G.conj(b, a1))], ftab[(a1, b)])
        return lhs == rhs

    def axiom2(a, b, b1):
        lhs = ftab[(a, G.mul(b, b1))]
        rhs = L.mul(ftab[(a, b1)], ftab[(G.conj(a, b1), G.conj(b, b1))])
        return lhs == rhs

    if n <= max_exhaustive:
        for a in range(n):
            for a1 in range(n):
                for b in range(n):
                    if not axiom1(a, a1, b):
                        return BiderivationResult(False, {"axiom": 1, "a": a, "a1": a1, "b": b}, "exhaustive")
        for a in range(n):
            for b in range(n):
                for b1 in range(n):
                    if not axiom2(a, b, b1):
                        return BiderivationResult(False, {"axiom": 2, "a": a, "b": b, "b1": b1}, "exhaustive")
        return BiderivationResult(True, None, "exhaustive")
    rng = random.Random(seed)
    for _ in range(samples):
        a, a1, b, b1 = (rng.randrange(n) for _ in range(4))
        if not axiom1(a, a1, b):
            return BiderivationResult(False, {"axiom": 1, "a": a, "a1": a1, "b": b}, "sampled")
        if not axiom2(a, b, b1):
            return BiderivationResult(False, {"axiom": 2, "a": a, "b": b, "b1": b1}, "sampled")
    return BiderivationResult(True, None, "sampled")
