"""Exact rational scalars and dense matrices.

Rationals are :class:`fractions.Fraction` (always reduced, denominator
positive). :class:`RatMatrix` is an immutable row-major matrix of them.
Elimination runs on sparse row dictionaries internally, which keeps the
large but very sparse systems assembled in :mod:`jetlab.liealg` cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "Inconsistent",
    "parse_rational",
    "format_rational",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "echelon_rows",
    "add_row",
    "sparse_rank",
    "sparse_nullspace",
]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are rejected on purpose; decimal strings such as ``"0.5"`` are
    accepted because Fraction parses them exactly.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot read {text!r} as an exact rational")


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Inconsistent:
    """Marker returned by :func:`solve` when ``a x = b`` has no solution."""

    _instance: Inconsistent | None = None

    def __new__(cls) -> Inconsistent:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Inconsistent"

    def __bool__(self) -> bool:
        return False


INCONSISTENT = Inconsistent()


class RatMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        ents = tuple(Fraction(e) for e in entries)
        if len(ents) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ents)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RatMatrix:
        columns = [list(c) for c in columns]
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> RatMatrix:
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    # access -------------------------------------------------------------
    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    # algebra ------------------------------------------------------------
    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in ocols:
                out.append(sum((a * c[k] for k, a in nz), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self.entries[i * self.cols + j] * v[j] for j in range(self.cols) if v[j]), Fraction(0))
                for i in range(self.rows)]

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, s) -> RatMatrix:
        s = Fraction(s)
        return RatMatrix(self.rows, self.cols, (s * a for a in self.entries))

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def hstack(self, other: RatMatrix) -> RatMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RatMatrix.from_rows([a + b for a, b in zip(self.to_rows(), other.to_rows())], self.cols + other.cols)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("det of a non-square matrix")
        a = self.to_rows()
        n = self.rows
        d = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                d = -d
            d *= a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return d

    def inverse(self) -> RatMatrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        x = solve(self, RatMatrix.identity(self.rows))
        if x is INCONSISTENT or rank(self) < self.rows:
            raise ZeroDivisionError("matrix is singular")
        return x

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(e) for e in r) for r in self.to_rows())
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


# ---------------------------------------------------------------------------
# sparse elimination kernel
# ---------------------------------------------------------------------------

def _sub_scaled(r: dict, f: Fraction, p: dict) -> None:
    for k, v in p.items():
        nv = r.get(k, 0) - f * v
        if nv:
            r[k] = nv
        else:
            r.pop(k, None)


def add_row(piv: dict[int, dict], row: dict) -> bool:
    """Reduce ``row`` against the echelon rows in ``piv``; store it if new.

    Returns True when the row was independent of ``piv``.
    """
    r = {k: Fraction(v) for k, v in row.items() if v}
    while r:
        k = min(r)
        p = piv.get(k)
        if p is None:
            inv = 1 / r[k]
            piv[k] = {j: v * inv for j, v in r.items()}
            return True
        _sub_scaled(r, r[k], p)
    return False


def echelon_rows(rows: Iterable[dict]) -> dict[int, dict]:
    """Incrementally reduce sparse rows; return ``{pivot_col: row}``.

    Each stored row has its pivot entry equal to 1 and no entries left of
    the pivot. Rows are not back-substituted.
    """
    piv: dict[int, dict] = {}
    for row in rows:
        add_row(piv, row)
    return piv


def _back_substitute(piv: dict[int, dict]) -> dict[int, dict]:
    order = sorted(piv)
    for a in reversed(order):
        ra = piv[a]
        for b in order:
            if b >= a:
                break
            rb = piv[b]
            f = rb.get(a)
            if f:
                _sub_scaled(rb, f, ra)
    return piv


def sparse_rank(rows: Iterable[dict]) -> int:
    return len(echelon_rows(rows))


def sparse_nullspace(rows: Iterable[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : row . x = 0 for every row}`` as dense vectors."""
    piv = _back_substitute(echelon_rows(rows))
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, r in piv.items():
            c = r.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def _sparse(m: RatMatrix) -> list[dict]:
    return [{j: e for j, e in enumerate(m.row(i)) if e} for i in range(m.rows)]


# ---------------------------------------------------------------------------
# public dense operations
# ---------------------------------------------------------------------------

def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    piv = _back_substitute(echelon_rows(_sparse(m)))
    pivots = sorted(piv)
    out = []
    for p in pivots:
        r = piv[p]
        out.append([r.get(j, Fraction(0)) for j in range(m.cols)])
    out += [[Fraction(0)] * m.cols for _ in range(m.rows - len(pivots))]
    return RatMatrix.from_rows(out, m.cols) if m.rows else m, pivots


def rank(m: RatMatrix) -> int:
    return sparse_rank(_sparse(m))


def nullspace(m: RatMatrix) -> RatMatrix:
    """Columns of the result are a basis of ``ker m``."""
    basis = sparse_nullspace(_sparse(m), m.cols)
    return RatMatrix.from_columns(basis, m.cols)


def solve(a: RatMatrix, b: RatMatrix) -> RatMatrix | Inconsistent:
    """One exact solution of ``a x = b`` (free variables set to zero)."""
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: a is {a.shape}, b is {b.shape}")
    n = a.cols
    aug = [{**{j: e for j, e in enumerate(a.row(i)) if e},
            **{n + j: e for j, e in enumerate(b.row(i)) if e}} for i in range(a.rows)]
    piv = _back_substitute(echelon_rows(aug))
    if any(p >= n for p in piv):
        return INCONSISTENT
    x = [[Fraction(0)] * b.cols for _ in range(n)]
    for p, r in piv.items():
        for j in range(b.cols):
            x[p][j] = r.get(n + j, Fraction(0))
    return RatMatrix.from_rows(x, b.cols)
