"""Property suites shared by ``jetlab verify`` and the test-suite.

Each suite returns a list of failure records (plain dicts); an empty list
means every property held.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from .exactlin import RatMatrix, rank
from .heisenberg import (
    HAutomorphism,
    compose as compose_aut,
    dilation,
    random_point,
    random_rational_symplectic,
    reflection,
    swap,
    symplectic,
)
from .hpoly import (
    ETA_FIRST,
    ETA_SECOND,
    ETA_VALUE,
    HPolynomial,
    compose_automorphism,
    compose_translation,
    harmonic_basis,
    jet2,
    monomials,
    satisfies_constraint,
)
from .jetalgebra import (
    antimorphism_failures,
    j2_h2,
    jl_subalgebra,
    psi,
    swap_iso,
    WellDefinednessFailure,
)
from .liealg import GradedLieAlgebra, verify_morphism
from .prolong import (
    automorphism_map,
    chain_rule_check,
    jet1,
    prolong_j1,
    translation,
    transport_j2,
)
from .reference_tables import E_TABLE, F_TABLE, parse_cell

Failures = list[dict]

TABLE_CS = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 5))
HARMONIC_CS = (Fraction(1), Fraction(2), Fraction(1, 2))
SWAP_CS = (Fraction(2), Fraction(1, 2), Fraction(3), Fraction(5, 7), Fraction(1))


def jacobi_failures(g: GradedLieAlgebra, name: str) -> Failures:
    out = []
    for i, j, k in itertools.combinations(range(g.dim), 3):
        if g.jacobi_residual(i, j, k):
            out.append({"suite": "jacobi", "algebra": name, "triple": [i + 1, j + 1, k + 1]})
    return out


def suite_jacobi(seed: int = 0) -> Failures:
    out = jacobi_failures(j2_h2(), "j2")
    for c in HARMONIC_CS:
        alg, _ = jl_subalgebra(c)
        out += jacobi_failures(alg, f"jl({c})")
    try:
        p = psi()
    except WellDefinednessFailure as exc:
        return out + [{"suite": "jacobi", "property": "psi", "detail": str(exc)}]
    from .heisenberg import hn_algebra

    for i, j in antimorphism_failures(hn_algebra(2), p.matrices()):
        out.append({"suite": "jacobi", "property": "antimorphism", "pair": [i + 1, j + 1]})
    return out


def compare_table(g: GradedLieAlgebra, table: list[list[str]], name: str,
                  c: Fraction | None = None) -> Failures:
    out = []
    n = len(table)
    if g.dim != n + 1:
        return [{"suite": "tables", "table": name, "detail": f"dimension {g.dim} != {n + 1}"}]
    for i in range(g.dim):
        for j in range(g.dim):
            want = parse_cell(table[i][j], c) if i < n and j < n else {}
            got = g.sc(i, j)
            if got != want:
                out.append({"suite": "tables", "table": name, "pair": [i + 1, j + 1],
                            "expected": {k + 1: str(v) for k, v in want.items()},
                            "got": {k + 1: str(v) for k, v in got.items()}})
    return out


def suite_tables(seed: int = 0) -> Failures:
    out = compare_table(j2_h2(), E_TABLE, "E")
    for c in TABLE_CS:
        alg, _ = jl_subalgebra(c)
        out += compare_table(alg, F_TABLE, f"F(c={c})", c)
    return out


def harmonic_jets(c, max_degree: int = 4, points: int = 5, seed: int = 0) -> list:
    rng = random.Random(seed)
    pts = [random_point(rng, 2) for _ in range(points)]
    polys = [u for d in range(max_degree + 1) for u in harmonic_basis(c, d)]
    return [jet2(u, p) for u in polys for p in pts]


def suite_harmonic(seed: int = 0) -> Failures:
    out = []
    deriv_slots = list(ETA_SECOND) + list(ETA_FIRST)
    for c in HARMONIC_CS:
        jets = harmonic_jets(c, seed=seed)
        bad = [j for j in jets if not satisfies_constraint(j, c)]
        if bad:
            out.append({"suite": "harmonic", "c": str(c), "property": "constraint",
                        "count": len(bad)})
        r = rank(RatMatrix.from_rows([[j[k] for k in deriv_slots] for j in jets], len(deriv_slots)))
        if r != 14:
            out.append({"suite": "harmonic", "c": str(c), "property": "fibre rank", "rank": r})
        with_value = deriv_slots + [ETA_VALUE]
        r = rank(RatMatrix.from_rows([[j[k] for k in with_value] for j in jets], len(with_value)))
        if r != 15:
            out.append({"suite": "harmonic", "c": str(c), "property": "rank with value", "rank": r})
    return out


def random_polynomial(rng: random.Random, max_degree: int = 3, terms: int = 4) -> HPolynomial:
    exps = [e for d in range(max_degree + 1) for e in monomials(d)]
    return HPolynomial({rng.choice(exps): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                        for _ in range(terms)})


def random_automorphism(rng: random.Random) -> HAutomorphism:
    kind = rng.randint(0, 3)
    if kind == 0:
        return dilation(Fraction(rng.randint(1, 5), rng.randint(1, 5)))
    if kind == 1:
        return compose_aut(reflection(), symplectic(random_rational_symplectic(rng)))
    if kind == 2:
        return compose_aut(swap(), dilation(Fraction(rng.randint(1, 4), rng.randint(1, 3))))
    return symplectic(random_rational_symplectic(rng))


def random_contact_map(rng: random.Random):
    if rng.randint(0, 1):
        return translation(random_point(rng, 2))
    return automorphism_map(random_automorphism(rng))


def suite_prolong(seed: int = 0, cases: int = 20) -> Failures:
    out = []
    rng = random.Random(seed)
    for case in range(cases):
        u = random_polynomial(rng)
        a = random_point(rng, 2)
        aut = random_automorphism(rng)
        # J^1: prolong the jet of u o f at a, expect the jet of u at f(a)
        f = automorphism_map(aut)
        if prolong_j1(f, jet1(compose_automorphism(u, aut), a)) != jet1(u, aut(a)):
            out.append({"suite": "prolong", "case": case, "property": "j1 automorphism"})
        g = random_point(rng, 2)
        if prolong_j1(translation(g), jet1(compose_translation(u, g), a)) != jet1(u, g * a):
            out.append({"suite": "prolong", "case": case, "property": "j1 translation"})
        push, mat = transport_j2(aut)
        if push(jet2(compose_automorphism(u, aut), a)) != jet2(u, aut(a)):
            out.append({"suite": "prolong", "case": case, "property": "j2 transport"})
        if not verify_morphism(j2_h2(), j2_h2(), mat):
            out.append({"suite": "prolong", "case": case, "property": "j2 automorphism"})
    for case in range(cases):
        f, g = random_contact_map(rng), random_contact_map(rng)
        a = random_point(rng, 2)
        if not chain_rule_check(f, g, a):
            out.append({"suite": "prolong", "case": case, "property": "chain rule"})
    return out


def suite_swap(seed: int = 0) -> Failures:
    out = []
    for c in SWAP_CS:
        src, _ = jl_subalgebra(c)
        dst, _ = jl_subalgebra(1 / c)
        check = verify_morphism(src, dst, swap_iso(c))
        if not check:
            out.append({"suite": "swap", "c": str(c), "pair": check.failing_pair,
                        "reason": check.reason})
    return out


SUITES: dict[str, Callable[..., Failures]] = {
    "jacobi": suite_jacobi,
    "tables": suite_tables,
    "harmonic": suite_harmonic,
    "prolong": suite_prolong,
    "swap": suite_swap,
}


def run(suite: str = "all", seed: int = 0) -> dict[str, Failures]:
    names = list(SUITES) if suite == "all" else [suite]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    return {n: SUITES[n](seed=seed) for n in names}
