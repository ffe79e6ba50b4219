#!/usr/bin/env python3
"""Benchmark: compiled enumeration kernel vs the pure-Python fallback.

Usage: python benchmarks/bench_enum.py [--heavy]

The workload is coset enumeration only (table standardization excluded),
which is where the two kernels differ.  --heavy adds the nu-presentation
of the order-27 extraspecial group, several minutes in pure Python.
"""

import argparse
import time

from nugroup.coset import active_kernel, enumerate_presentation
from nugroup.nu import build_nu_presentation
from nugroup.words import parse_presentation

CASES = """
group B3   = < a, b, c | a^2, b^2, c^2, (a*c)^2, (a*b)^3, (b*c)^4 >
group B4   = < a, b, c, d | a^2, b^2, c^2, d^2, (a*c)^2, (a*d)^2, (b*d)^2, (a*b)^3, (b*c)^4, (c*d)^3 >
group KQ   = < a, b | a^3, b^7, (a*b)^2, (a*b^-2)^4 >
group H27  = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >
"""


def timed(pres, kernel, repeats=3):
    best = float("inf")
    cosets = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        table = enumerate_presentation(pres, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
        cosets = table.num_cosets
    return cosets, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heavy", action="store_true", help="include nu(H27), minutes in pure Python")
    args = ap.parse_args()

    groups = parse_presentation(CASES)
    cases = [(p.name, p) for p in groups]
    by_name = dict(cases)
    cases += [
        ("nu(D4)", build_nu_presentation(
            parse_presentation("group D4 = < a, b | a^4, b^2, (a*b)^2 >")[0], "gens")),
        ("nu(C3xC3)", build_nu_presentation(
            parse_presentation("group C3xC3 = < a, b | a^3, b^3, [a,b] >")[0], "gens")),
    ]
    if args.heavy:
        cases.append(("nu(H27)", build_nu_presentation(by_name["H27"], "gens")))

    if active_kernel() != "c":
        print("note: compiled kernel not built; both columns will use the same code")
    print(f"{'presentation':<12} {'cosets':>9} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for name, pres in cases:
        repeats = 1 if name.startswith("nu(") else 3
        n_c, t_c = timed(pres, "c" if active_kernel() == "c" else "py", repeats)
        n_p, t_p = timed(pres, "py", repeats)
        assert n_c == n_p
        print(f"{name:<12} {n_c:>9} {t_c:>9.3f}s {t_p:>9.3f}s {t_p / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
