"""Exact polynomials on H^2 and their horizontal 2-jets.

Variables are ordered (x1, x2, y1, y2, t); horizontal variables have
weight 1 and t has weight 2. Left-invariant fields follow from the group
law: X_i = d/dx_i + 2 y_i d/dt, Y_i = d/dy_i - 2 x_i d/dt, T = d/dt.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactlin import RatMatrix, format_rational, nullspace, parse_rational
from .heisenberg import HAutomorphism, HPoint

VARS = ("x1", "x2", "y1", "y2", "t")
WEIGHTS = (1, 1, 1, 1, 2)
FIELDS = ("X1", "X2", "Y1", "Y2", "T")
HORIZONTAL = ("X1", "X2", "Y1", "Y2")

# second-order PBW labels in jet order; (A, B) stands for the operator A~ B~
# (B applied first)
SECOND_ORDER = (
    ("X1", "X1"), ("X1", "X2"), ("X1", "Y1"), ("X1", "Y2"), ("X2", "X2"), ("X2", "Y1"),
    ("X2", "Y2"), ("Y1", "Y1"), ("Y1", "Y2"), ("Y2", "Y2"), ("Y1", "X1"),
)

# positions inside a JetVector (eta[k] is the coefficient of E_k; eta[0] is u(p))
ETA_VALUE = 0
ETA_BASE_H = (1, 2, 3, 4)
ETA_SECOND = tuple(range(5, 16))
ETA_BASE_T = 16
ETA_FIRST = (17, 18, 19, 20)

ETA_LEGEND = (
    ["u(p)", "x1(p)", "x2(p)", "y1(p)", "y2(p)"]
    + [a + "^2" if a == b else a + b for a, b in SECOND_ORDER]
    + ["t(p)", "X1", "X2", "Y1", "Y2"]
)

Exp = tuple  # (a1, a2, b1, b2, e)


class HPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(int(v) for v in e)
                if len(e) != 5 or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    def __setattr__(self, name, value):
        raise AttributeError("HPolynomial is immutable")

    @classmethod
    def const(cls, c) -> HPolynomial:
        return cls({(0, 0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> HPolynomial:
        e = [0] * 5
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> HPolynomial:
        return cls({tuple(exp): coef})

    def __add__(self, other) -> HPolynomial:
        other = _lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> HPolynomial:
        return HPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> HPolynomial:
        return self + (-_lift(other))

    def __rsub__(self, other) -> HPolynomial:
        return _lift(other) - self

    def __mul__(self, other) -> HPolynomial:
        other = _lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return HPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> HPolynomial:
        out = HPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, HPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARS, e) if k)
            parts.append(f"{format_rational(c)}*{mono}" if mono else format_rational(c))
        return " + ".join(parts)

    def weighted_degree(self) -> int:
        return max((_wdeg(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_wdeg(e) for e in self.terms}) <= 1

    def diff(self, var: int) -> HPolynomial:
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return HPolynomial(out)

    def __call__(self, p: HPoint | Sequence) -> Fraction:
        vals = p.coords if isinstance(p, HPoint) else [Fraction(v) for v in p]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, images: Sequence[HPolynomial]) -> HPolynomial:
        """Replace each variable by the given polynomial (composition)."""
        out = HPolynomial()
        powers: dict = {}
        for e, c in self.terms.items():
            term = HPolynomial.const(c)
            for idx, k in enumerate(e):
                if k:
                    key = (idx, k)
                    if key not in powers:
                        powers[key] = images[idx] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in self.terms.items()]}

    @classmethod
    def from_json(cls, doc: Mapping) -> HPolynomial:
        return cls({tuple(t["exp"]): parse_rational(t["coef"]) for t in doc["terms"]})


def _wdeg(e: Exp) -> int:
    return sum(w * k for w, k in zip(WEIGHTS, e))


def _lift(v) -> HPolynomial:
    return v if isinstance(v, HPolynomial) else HPolynomial.const(v)


x1, x2, y1, y2, t = (HPolynomial.var(v) for v in VARS)


def apply_field(which: str, u: HPolynomial) -> HPolynomial:
    if which == "T":
        return u.diff(4)
    i = HORIZONTAL.index(which)
    if which.startswith("X"):
        return u.diff(i) + 2 * HPolynomial.var(f"y{which[1]}") * u.diff(4)
    return u.diff(i) - 2 * HPolynomial.var(f"x{which[1]}") * u.diff(4)


def apply_word(word: Sequence[str], u: HPolynomial) -> HPolynomial:
    """Apply the operator written left to right, so the last letter acts first."""
    for f in reversed(word):
        u = apply_field(f, u)
    return u


def _check_symmetric(m: RatMatrix) -> None:
    if m.shape != (4, 4) or m != m.T:
        raise ValueError("coefficient matrix must be a symmetric 4x4 matrix")


def sublaplacian(m: RatMatrix, u: HPolynomial) -> HPolynomial:
    _check_symmetric(m)
    first = [apply_field(f, u) for f in HORIZONTAL]
    out = HPolynomial()
    for i, j in itertools.product(range(4), repeat=2):
        if m[i, j]:
            out = out + m[i, j] * apply_field(HORIZONTAL[i], first[j])
    return out


def lc_matrix(c) -> RatMatrix:
    c = parse_rational(c)
    return RatMatrix.diag([1, c, 1, c])


def lc(c, u: HPolynomial) -> HPolynomial:
    return sublaplacian(lc_matrix(c), u)


def monomials(d: int) -> list[Exp]:
    """Exponents of weighted degree exactly ``d`` in lexicographic order."""
    out = []
    for e in range(d // 2 + 1):
        rest = d - 2 * e
        for a in itertools.product(range(rest + 1), repeat=4):
            if sum(a) == rest:
                out.append(tuple(a) + (e,))
    return sorted(out)


def harmonic_basis_matrix(m: RatMatrix, d: int) -> list[HPolynomial]:
    """Weighted-homogeneous polynomials of degree d killed by the sub-Laplacian."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    src = monomials(d)
    dst = {e: i for i, e in enumerate(monomials(d - 2))} if d >= 2 else {}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    for j, e in enumerate(src):
        for e2, c in sublaplacian(m, HPolynomial.monomial(e)).terms.items():
            rows[dst[e2]][j] += c
    if not rows:
        return [HPolynomial.monomial(e) for e in src]
    ker = nullspace(RatMatrix.from_rows(rows, len(src)))
    return [HPolynomial({e: v for e, v in zip(src, col)}) for col in ker.columns()]


def harmonic_basis(c, d: int) -> list[HPolynomial]:
    c = parse_rational(c)
    if c <= 0:
        raise ValueError("c must be positive")
    return harmonic_basis_matrix(lc_matrix(c), d)


@dataclass(frozen=True)
class JetVector:
    """Base point plus horizontal 2-jet, in the coordinates of the basis E.

    ``eta[k]`` for k = 1..20 is the coefficient of E_k, and ``eta[0]`` is the
    function value (the coefficient of E_21).
    """

    eta: tuple

    def __post_init__(self):
        eta = tuple(Fraction(v) for v in self.eta)
        if len(eta) != 21:
            raise ValueError("a jet vector has 21 coordinates")
        object.__setattr__(self, "eta", eta)

    def __getitem__(self, k: int) -> Fraction:
        return self.eta[k]

    @property
    def value(self) -> Fraction:
        return self.eta[ETA_VALUE]

    @property
    def base(self) -> HPoint:
        return HPoint.from_coords([self.eta[k] for k in ETA_BASE_H] + [self.eta[ETA_BASE_T]])

    @property
    def first(self) -> list[Fraction]:
        return [self.eta[k] for k in ETA_FIRST]

    @property
    def second(self) -> list[Fraction]:
        return [self.eta[k] for k in ETA_SECOND]

    def to_json(self) -> dict:
        return {"eta": [format_rational(v) for v in self.eta]}

    @classmethod
    def from_json(cls, doc: Mapping) -> JetVector:
        return cls(tuple(parse_rational(v) for v in doc["eta"]))


def jet2(u: HPolynomial, p: HPoint) -> JetVector:
    if p.n != 2:
        raise ValueError("jets are computed on H^2")
    eta = [Fraction(0)] * 21
    eta[ETA_VALUE] = u(p)
    for k, v in zip(ETA_BASE_H, p.horizontal):
        eta[k] = v
    eta[ETA_BASE_T] = p.t
    first = {f: apply_field(f, u) for f in HORIZONTAL}
    for k, f in zip(ETA_FIRST, HORIZONTAL):
        eta[k] = first[f](p)
    for k, (a, b) in zip(ETA_SECOND, SECOND_ORDER):
        eta[k] = apply_field(a, first[b])(p)
    return JetVector(tuple(eta))


def constraint_vector(m: RatMatrix) -> list[Fraction]:
    """Coefficients over eta_5..eta_15 of sum m_ij Z_i Z_j u(p).

    Uses the fact that the bilinear form of the jet, sum eta_K A_K, evaluates
    to B(e_i, e_j) = Z_i Z_j u(p).
    """
    from .jetalgebra import hd2_forms

    _check_symmetric(m)
    return [sum((m[i, j] * form[i][j] for i in range(4) for j in range(4)), Fraction(0))
            for form in hd2_forms()]


def satisfies_constraint(j: JetVector, c) -> bool:
    c = parse_rational(c)
    return j[5] + j[12] + c * (j[9] + j[14]) == 0


def satisfies_matrix_constraint(j: JetVector, m: RatMatrix) -> bool:
    return sum((k * v for k, v in zip(constraint_vector(m), j.second)), Fraction(0)) == 0


# -- univariate helpers for curve_poly --------------------------------------

def _padd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def curve_poly(u: HPolynomial, p: HPoint, v: Sequence) -> list[Fraction]:
    """Coefficients (constant first) of s -> u(p exp(sV)) for V in the first layer."""
    v = [Fraction(a) for a in v]
    if len(v) != 2 * p.n:
        raise ValueError("V must be a first-layer vector")
    n = p.n
    # p * exp(sV) in coordinates, each a polynomial in s
    xs = [[p.x[i], v[i]] for i in range(n)]
    ys = [[p.y[i], v[n + i]] for i in range(n)]
    ts = [p.t, sum((-2 * p.x[i] * v[n + i] + 2 * p.y[i] * v[i] for i in range(n)), Fraction(0))]
    coords = xs + ys + [ts]
    out: list = []
    for e, c in u.terms.items():
        term = [c]
        for poly, k in zip(coords, e):
            for _ in range(k):
                term = _pmul(term, poly)
        out = _padd(out, term)
    return _trim(out)


def compose_automorphism(u: HPolynomial, aut: HAutomorphism) -> HPolynomial:
    """u o aut for a linear automorphism of H^2."""
    lin = aut.dv1
    images = []
    hvars = [x1, x2, y1, y2]
    for i in range(4):
        images.append(sum((lin[i, j] * hvars[j] for j in range(4) if lin[i, j]), HPolynomial()))
    images.append(aut.dt * t)
    return u.substitute(images)


def compose_translation(u: HPolynomial, g: HPoint) -> HPolynomial:
    """u o L_g, i.e. p -> u(g p)."""
    hvars = [x1, x2, y1, y2]
    gh = g.horizontal
    images = [gh[i] + hvars[i] for i in range(4)]
    tt = g.t + t
    for i in range(2):
        tt = tt - 2 * g.x[i] * hvars[2 + i] + 2 * g.y[i] * hvars[i]
    images.append(tt)
    return u.substitute(images)
