"""Prolongation of contact maps of H^2 to jet spaces.

Supported maps are left translations, automorphisms and compositions of
those. ``n_map`` differentiates ``s -> f(a)^{-1} f(a exp(sV))`` exactly,
independently of the closed forms carried by each kind.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exactlin import RatMatrix
from .heisenberg import HAutomorphism, HPoint, exp_horizontal
from .hpoly import (
    HPolynomial,
    JetVector,
    compose_automorphism,
    constraint_vector,
    monomials,
    sublaplacian,
)
from .jetalgebra import induced_automorphism


@dataclass(frozen=True)
class ContactMap:
    """``kind`` is 'translation', 'automorphism' or 'composition'.

    Compositions list their parts in application order.
    """

    kind: str
    translation: HPoint | None = None
    aut: HAutomorphism | None = None
    parts: tuple = field(default=())

    def __call__(self, p: HPoint) -> HPoint:
        if self.kind == "translation":
            return self.translation * p
        if self.kind == "automorphism":
            return self.aut(p)
        for f in self.parts:
            p = f(p)
        return p


def translation(g: HPoint) -> ContactMap:
    return ContactMap("translation", translation=g)


def automorphism_map(aut: HAutomorphism) -> ContactMap:
    return ContactMap("automorphism", aut=aut)


def compose(*maps: ContactMap) -> ContactMap:
    """``compose(f, g)`` is ``f o g``."""
    parts: list[ContactMap] = []
    for m in reversed(maps):
        parts.extend(m.parts if m.kind == "composition" else [m])
    return ContactMap("composition", parts=tuple(parts))


def n_map(f: ContactMap, a: HPoint) -> RatMatrix:
    """N_{f,a} on the first layer, columns = images of e_1..e_4.

    For the supported maps, ``s -> f(a)^{-1} f(a exp(sV))`` is a polynomial
    of degree at most 2 in s, so the central difference at s = +-1 is its
    exact derivative at 0. The degree bound and the contact property
    (vanishing t-derivative) are both checked.
    """
    base_inv = f(a).inverse()
    n = a.n
    cols = []
    for i in range(2 * n):
        v = [Fraction(0)] * (2 * n)
        v[i] = Fraction(1)

        def h(s):
            return (base_inv * f(a * exp_horizontal([s * c for c in v]))).coords

        hm, h0, hp, h2 = h(Fraction(-1)), h(Fraction(0)), h(Fraction(1)), h(Fraction(2))
        # a quadratic through -1, 0, 1 must also fit s = 2
        for a_, b_, c_, d_ in zip(hm, h0, hp, h2):
            quad2 = 3 * c_ - 3 * b_ + a_
            if quad2 != d_:
                raise ValueError("map is not of the supported polynomial type")
        deriv = [(c_ - a_) / 2 for a_, c_ in zip(hm, hp)]
        if deriv[-1] != 0:
            raise ValueError("map is not contact at this point")
        cols.append(deriv[:-1])
    return RatMatrix.from_columns(cols, 2 * n)


def n_map_closed_form(f: ContactMap, a: HPoint) -> RatMatrix:
    """N_{f,a} from the kind: I for translations, dV1 for automorphisms, chain rule otherwise."""
    if f.kind == "translation":
        return RatMatrix.identity(2 * a.n)
    if f.kind == "automorphism":
        return f.aut.dv1
    out = RatMatrix.identity(2 * a.n)
    p = a
    for part in f.parts:
        out = n_map_closed_form(part, p) @ out
        p = part(p)
    return out


def chain_rule_check(f: ContactMap, g: ContactMap, a: HPoint) -> bool:
    return n_map(compose(f, g), a) == n_map(f, g(a)) @ n_map(g, a)


# ---------------------------------------------------------------------------
# J^1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class J1Point:
    base: HPoint
    a0: Fraction
    a1: tuple

    def __post_init__(self):
        object.__setattr__(self, "a0", Fraction(self.a0))
        a1 = tuple(Fraction(v) for v in self.a1)
        if len(a1) != 2 * self.base.n:
            raise ValueError("first-order part must have one entry per horizontal direction")
        object.__setattr__(self, "a1", a1)

    def __mul__(self, other: J1Point) -> J1Point:
        return j1_mul(self, other)


def j1_mul(p: J1Point, q: J1Point) -> J1Point:
    # (a,A)(b,B) = (ab, B + A + log(b) contracted into A^1)
    shift = sum((c * v for c, v in zip(p.a1, q.base.horizontal)), Fraction(0))
    return J1Point(p.base * q.base, p.a0 + q.a0 + shift, tuple(x + y for x, y in zip(p.a1, q.a1)))


def j1_inverse(p: J1Point) -> J1Point:
    shift = sum((c * v for c, v in zip(p.a1, p.base.horizontal)), Fraction(0))
    return J1Point(p.base.inverse(), shift - p.a0, tuple(-v for v in p.a1))


def j1_identity(n: int = 2) -> J1Point:
    return J1Point(HPoint.zero(n), 0, (0,) * (2 * n))


def prolong_j1(f: ContactMap, p: J1Point) -> J1Point:
    """(a, A) -> (f(a), A^0 + A^1 o N_{f,a}^{-1})."""
    ninv = n_map(f, p.base).inverse()
    a1 = tuple(sum((p.a1[j] * ninv[j, i] for j in range(len(p.a1))), Fraction(0)) for i in range(len(p.a1)))
    return J1Point(f(p.base), p.a0, a1)


def jet1(u: HPolynomial, p: HPoint) -> J1Point:
    from .hpoly import HORIZONTAL, apply_field

    return J1Point(p, u(p), tuple(apply_field(fld, u)(p) for fld in HORIZONTAL))


# ---------------------------------------------------------------------------
# J^2 transport under automorphisms
# ---------------------------------------------------------------------------

def jet_to_e(j: JetVector) -> list[Fraction]:
    return list(j.eta[1:]) + [j.eta[0]]


def e_to_jet(v: Sequence) -> JetVector:
    return JetVector((v[20],) + tuple(v[:20]))


def transport_j2(aut: HAutomorphism) -> tuple[Callable[[JetVector], JetVector], RatMatrix]:
    """Push 2-jets forward along ``aut``.

    The returned map sends the jet of ``u o aut`` at ``a`` to the jet of
    ``u`` at ``aut(a)``; the matrix is the same map on E coordinates and is
    a Lie algebra automorphism of j^2(h^2).
    """
    if aut.n != 2:
        raise ValueError("jets are transported on H^2")
    mat = induced_automorphism(aut.dv1, aut.dt)

    def push(j: JetVector) -> JetVector:
        return e_to_jet(mat.apply(jet_to_e(j)))

    return push, mat


@dataclass(frozen=True)
class ConjugationResult:
    m_prime: RatMatrix
    verified: bool
    fibers_ok: bool
    orientation: str

    def __bool__(self) -> bool:
        return self.verified and self.fibers_ok


def _polys_up_to(d: int) -> list[HPolynomial]:
    return [HPolynomial.monomial(e) for k in range(d + 1) for e in monomials(k)]


def _conjugation_holds(aut: HAutomorphism, m: RatMatrix, mp: RatMatrix, degree: int) -> bool:
    for u in _polys_up_to(degree):
        lhs = sublaplacian(m, compose_automorphism(u, aut))
        rhs = compose_automorphism(sublaplacian(mp, u), aut)
        if lhs != rhs:
            return False
    return True


def maps_harmonic_fibers(aut: HAutomorphism, m: RatMatrix, degree: int = 4) -> ConjugationResult:
    """Find M' with L_M(u o aut) = (L_{M'} u) o aut and check the jet fibres.

    Both candidate orientations are tried; the one that survives exact
    verification on all monomials of weighted degree <= ``degree`` wins.
    """
    lin = aut.dv1
    inv = lin.inverse()
    candidates = [("L M L^T", lin @ m @ lin.T), ("L^-T M L^-1", inv.T @ m @ inv)]
    chosen = None
    for name, mp in candidates:
        if _conjugation_holds(aut, m, mp, degree):
            chosen = (name, mp)
            break
    if chosen is None:
        return ConjugationResult(candidates[0][1], False, False, "none")
    name, mp = chosen
    _, mat = transport_j2(aut)
    block = [[mat[4 + r, 4 + k] for k in range(11)] for r in range(11)]
    k_src = constraint_vector(m)
    k_dst = constraint_vector(mp)
    pulled = [sum((k_dst[r] * block[r][k] for r in range(11)), Fraction(0)) for k in range(11)]
    fibers_ok = _proportional(pulled, k_src)
    return ConjugationResult(mp, True, fibers_ok, name)


def _proportional(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """a = lam * b for some nonzero lam."""
    k = next((i for i, v in enumerate(b) if v), None)
    if k is None or not a[k]:
        return False
    lam = a[k] / b[k]
    return all(x == lam * y for x, y in zip(a, b))
