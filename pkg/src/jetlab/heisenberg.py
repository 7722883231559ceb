"""Heisenberg groups H^n in exponential coordinates (x, y, t).

Basis order of the Lie algebra is e_1..e_n = X_1..X_n, e_{n+1}..e_{2n} =
Y_1..Y_n, e_{2n+1} = T. The group law is the BCH product, so ``exp`` and
``log`` are the identity on coordinates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exactlin import RatMatrix, format_rational, parse_rational
from .liealg import GradedLieAlgebra


@dataclass(frozen=True)
class HPoint:
    n: int
    x: tuple
    y: tuple
    t: Fraction

    def __post_init__(self):
        x = tuple(Fraction(v) for v in self.x)
        y = tuple(Fraction(v) for v in self.y)
        if len(x) != self.n or len(y) != self.n:
            raise ValueError(f"H^{self.n} point needs {self.n} x and {self.n} y coordinates")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", Fraction(self.t))

    @classmethod
    def from_coords(cls, coords: Sequence) -> HPoint:
        """Build from the flat list (x_1..x_n, y_1..y_n, t)."""
        if len(coords) % 2 != 1:
            raise ValueError("flat coordinates must have odd length 2n+1")
        n = len(coords) // 2
        return cls(n, tuple(coords[:n]), tuple(coords[n:2 * n]), coords[-1])

    @classmethod
    def zero(cls, n: int) -> HPoint:
        return cls(n, (0,) * n, (0,) * n, 0)

    @property
    def horizontal(self) -> list[Fraction]:
        return list(self.x) + list(self.y)

    @property
    def coords(self) -> list[Fraction]:
        return list(self.x) + list(self.y) + [self.t]

    def __mul__(self, other: HPoint) -> HPoint:
        return group_mul(self, other)

    def inverse(self) -> HPoint:
        return HPoint(self.n, tuple(-v for v in self.x), tuple(-v for v in self.y), -self.t)

    def to_json(self) -> dict:
        return {"n": self.n, "x": [format_rational(v) for v in self.x],
                "y": [format_rational(v) for v in self.y], "t": format_rational(self.t)}

    @classmethod
    def from_json(cls, doc: dict) -> HPoint:
        return cls(int(doc["n"]), tuple(parse_rational(v) for v in doc["x"]),
                   tuple(parse_rational(v) for v in doc["y"]), parse_rational(doc["t"]))


def group_mul(p: HPoint, q: HPoint) -> HPoint:
    if p.n != q.n:
        raise ValueError(f"cannot multiply points of H^{p.n} and H^{q.n}")
    xy = sum(a * b for a, b in zip(p.x, q.y))
    yx = sum(a * b for a, b in zip(p.y, q.x))
    return HPoint(p.n,
                  tuple(a + b for a, b in zip(p.x, q.x)),
                  tuple(a + b for a, b in zip(p.y, q.y)),
                  p.t + q.t - 2 * xy + 2 * yx)


def exp_horizontal(v: Sequence) -> HPoint:
    """exp of a first-layer vector (x-part then y-part)."""
    n = len(v) // 2
    return HPoint(n, tuple(v[:n]), tuple(v[n:]), 0)


def hn_algebra(n: int) -> GradedLieAlgebra:
    if n < 1:
        raise ValueError("n must be >= 1")
    brs = {(i, n + i): {2 * n: Fraction(-4)} for i in range(n)}
    return GradedLieAlgebra(2 * n + 1, brs, [list(range(2 * n)), [2 * n]])


def omega(n: int) -> RatMatrix:
    """Matrix of sum_i dx_i ^ dy_i in the coordinates (x, y)."""
    m = 2 * n
    return RatMatrix(m, m, (1 if j == i + n else -1 if i == j + n else 0
                            for i in range(m) for j in range(m)))


def is_symplectic(s: RatMatrix) -> bool:
    if s.rows != s.cols or s.rows % 2:
        return False
    om = omega(s.rows // 2)
    return s.T @ om @ s == om


@dataclass(frozen=True)
class HAutomorphism:
    """Group automorphism of H^n given by its action on the first layer.

    ``dv1`` has the image of e_i as its i-th column; the centre is scaled
    by ``dt``. ``parts`` is non-empty only for compositions, listed in the
    order they are applied.
    """

    kind: str
    n: int
    dv1: RatMatrix
    dt: Fraction
    param: object = None
    parts: tuple = field(default=())

    def __call__(self, p: HPoint) -> HPoint:
        return apply(self, p)


def dilation(lam, n: int = 2) -> HAutomorphism:
    lam = parse_rational(lam)
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    return HAutomorphism("dilation", n, RatMatrix.identity(2 * n).scale(lam), lam * lam, lam)


def reflection(n: int = 2) -> HAutomorphism:
    d = [1] * n + [-1] * n
    return HAutomorphism("reflection", n, RatMatrix.diag(d), Fraction(-1))


def symplectic(s: RatMatrix) -> HAutomorphism:
    if not is_symplectic(s):
        raise ValueError("matrix is not symplectic")
    return HAutomorphism("symplectic", s.rows // 2, s, Fraction(1), s)


def compose(*auts: HAutomorphism) -> HAutomorphism:
    """``compose(a, b)`` is ``a o b`` (b applied first)."""
    if not auts:
        raise ValueError("nothing to compose")
    n = auts[0].n
    dv1 = RatMatrix.identity(2 * n)
    dt = Fraction(1)
    for a in auts:
        if a.n != n:
            raise ValueError("arity mismatch in composition")
        dv1 = dv1 @ a.dv1
        dt *= a.dt
    return HAutomorphism("composition", n, dv1, dt, None, tuple(reversed(auts)))


def automorphism(kind: str, *args, **kwargs) -> HAutomorphism:
    makers = {"dilation": dilation, "reflection": reflection, "symplectic": symplectic,
              "composition": compose}
    try:
        return makers[kind](*args, **kwargs)
    except KeyError:
        raise ValueError(f"unknown automorphism kind {kind!r}") from None


def swap_matrix() -> RatMatrix:
    """(x1, x2, y1, y2) -> (x2, x1, y2, y1) on the first layer of H^2."""
    perm = [1, 0, 3, 2]
    return RatMatrix(4, 4, (1 if perm[j] == i else 0 for i in range(4) for j in range(4)))


def swap(n: int = 2) -> HAutomorphism:
    if n != 2:
        raise ValueError("the index swap is defined on H^2")
    return symplectic(swap_matrix())


def apply(aut: HAutomorphism, p: HPoint) -> HPoint:
    if p.n != aut.n:
        raise ValueError("arity mismatch")
    if aut.kind == "composition":
        for a in aut.parts:
            p = apply(a, p)
        return p
    if aut.kind == "dilation":
        lam = aut.param
        return HPoint(p.n, tuple(lam * v for v in p.x), tuple(lam * v for v in p.y), lam * lam * p.t)
    if aut.kind == "reflection":
        return HPoint(p.n, p.x, tuple(-v for v in p.y), -p.t)
    h = aut.dv1.apply(p.horizontal)
    return HPoint(p.n, tuple(h[:p.n]), tuple(h[p.n:]), aut.dt * p.t)


def random_point(rng: random.Random, n: int = 2) -> HPoint:
    def r():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return HPoint(n, tuple(r() for _ in range(n)), tuple(r() for _ in range(n)), r())


def aut_is_group_morphism(aut: HAutomorphism | Callable[[HPoint], HPoint], samples: int = 20,
                          seed: int = 0, n: int | None = None) -> bool:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = n if n is not None else getattr(aut, "n", 2)
    f = aut if callable(aut) else None
    rng = random.Random(seed)
    for _ in range(samples):
        p, q = random_point(rng, n), random_point(rng, n)
        if f(p * q) != f(p) * f(q):
            return False
    return True


def random_rational_symplectic(rng: random.Random, n: int = 2, steps: int = 4) -> RatMatrix:
    """Seeded product of exact symplectic generators.

    Generators: upper and lower shears with symmetric rational blocks,
    ``diag(A, A^{-T})`` for small invertible integer ``A``, and Omega.
    """
    def small():
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def block(a, b, c, d):
        rows = [list(ra) + list(rb) for ra, rb in zip(a.to_rows(), b.to_rows())]
        rows += [list(rc) + list(rd) for rc, rd in zip(c.to_rows(), d.to_rows())]
        return RatMatrix.from_rows(rows)

    eye, zero = RatMatrix.identity(n), RatMatrix.zeros(n, n)
    s = RatMatrix.identity(2 * n)
    for _ in range(steps):
        kind = rng.randint(0, 3)
        if kind in (0, 1):
            b = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    b[i][j] = b[j][i] = small()
            bm = RatMatrix.from_rows(b)
            g = block(eye, bm, zero, eye) if kind == 0 else block(eye, zero, bm, eye)
        elif kind == 2:
            while True:
                a = RatMatrix(n, n, (rng.randint(-2, 2) for _ in range(n * n)))
                if a.det():
                    break
            g = block(a, zero, zero, a.inverse().T)
        else:
            g = omega(n)
        s = s @ g
    return s
