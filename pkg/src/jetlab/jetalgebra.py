"""The jet algebra j^2(h^2; R) and its harmonic subalgebras.

Coordinates on the first layer of h^2 are (x1, x2, y1, y2), so a bilinear
form is a 4x4 matrix ``B`` with ``B[i][j] = A(e_i, e_j)``. HD^2 is the
11-dimensional space of forms whose antisymmetric part is a multiple of
the symplectic form; its basis below is the PBW-adapted one, with the
convention ``A_{u,p}(V, W) = V~ W~ u(p)``.

The abelian part HD^{<=2} is ordered HD^2 (11), HD^1 (4), HD^0 (1), which
makes the anti-semidirect product come out in the order of the basis E.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactlin import INCONSISTENT, RatMatrix, format_rational, parse_rational, rank, solve
from .heisenberg import hn_algebra, swap_matrix
from .liealg import GradedLieAlgebra, bracket, restrict

X1, X2, Y1, Y2 = range(4)
H_DIM = 16  # dim HD^{<=2}
HD2_DIM = 11

HD2_LABELS = ("X1^2", "X1X2", "X1Y1", "X1Y2", "X2^2", "X2Y1", "X2Y2", "Y1^2", "Y1Y2", "Y2^2", "Y1X1")
HD1_LABELS = ("X1", "X2", "Y1", "Y2")

E_LABELS = (["e1", "e2", "e3", "e4"] + [f"A_{s}" for s in HD2_LABELS] + ["e5"]
            + [f"A_{s}" for s in HD1_LABELS] + ["1"])
E_LAYERS = [list(range(15)), list(range(15, 20)), [20]]


class WellDefinednessFailure(RuntimeError):
    pass


class MembershipFailure(ValueError):
    pass


def _form(*terms: tuple[int, int, int]) -> tuple[tuple[Fraction, ...], ...]:
    b = [[Fraction(0)] * 4 for _ in range(4)]
    for coef, i, j in terms:
        b[i][j] += coef
    return tuple(tuple(r) for r in b)


@lru_cache(maxsize=None)
def hd2_forms() -> tuple:
    """The 11 basis forms A_K of HD^2 as 4x4 matrices, in E order."""
    return (
        _form((1, X1, X1)),
        _form((1, X1, X2), (1, X2, X1)),
        _form((1, X1, Y1), (-1, Y2, X2)),
        _form((1, X1, Y2), (1, Y2, X1)),
        _form((1, X2, X2)),
        _form((1, Y1, X2), (1, X2, Y1)),
        _form((1, X2, Y2), (1, Y2, X2)),
        _form((1, Y1, Y1)),
        _form((1, Y1, Y2), (1, Y2, Y1)),
        _form((1, Y2, Y2)),
        _form((1, Y1, X1), (1, Y2, X2)),
    )


@lru_cache(maxsize=None)
def _forms_matrix() -> RatMatrix:
    # 16 x 11: column K is the flattened form A_K
    return RatMatrix.from_columns([[f[i][j] for i in range(4) for j in range(4)] for f in hd2_forms()], 16)


def hd2_coords(b: Sequence[Sequence]) -> list[Fraction]:
    """Coordinates of a bilinear form over the HD^2 basis.

    Raises MembershipFailure when the form is not in HD^2.
    """
    rhs = RatMatrix(16, 1, (Fraction(b[i][j]) for i in range(4) for j in range(4)))
    x = solve(_forms_matrix(), rhs)
    if x is INCONSISTENT:
        raise MembershipFailure("bilinear form is not in HD^2")
    return x.col(0)


def bilinear_from_coords(k2: Sequence) -> list[list[Fraction]]:
    out = [[Fraction(0)] * 4 for _ in range(4)]
    for c, f in zip(k2, hd2_forms()):
        if c:
            for i in range(4):
                for j in range(4):
                    out[i][j] += Fraction(c) * f[i][j]
    return out


def in_hd2(b: Sequence[Sequence]) -> bool:
    try:
        hd2_coords(b)
    except MembershipFailure:
        return False
    return True


@dataclass(frozen=True)
class HDElement:
    k0: Fraction
    k1: tuple
    k2: tuple

    def __post_init__(self):
        object.__setattr__(self, "k0", Fraction(self.k0))
        k1 = tuple(Fraction(v) for v in self.k1)
        k2 = tuple(Fraction(v) for v in self.k2)
        if len(k1) != 4 or len(k2) != HD2_DIM:
            raise ValueError("HD element needs 4 first-order and 11 second-order coefficients")
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)

    @classmethod
    def zero(cls) -> HDElement:
        return cls(0, (0,) * 4, (0,) * HD2_DIM)

    @classmethod
    def from_vector(cls, v: Sequence) -> HDElement:
        """From coordinates in the order HD^2, HD^1, HD^0."""
        return cls(v[15], tuple(v[11:15]), tuple(v[:11]))

    @classmethod
    def from_bilinear(cls, b: Sequence[Sequence], k1: Sequence = (0,) * 4, k0=0) -> HDElement:
        return cls(k0, tuple(k1), tuple(hd2_coords(b)))

    def vector(self) -> list[Fraction]:
        return list(self.k2) + list(self.k1) + [self.k0]

    @property
    def bilinear(self) -> list[list[Fraction]]:
        return bilinear_from_coords(self.k2)

    def evaluate2(self, v: Sequence, w: Sequence) -> Fraction:
        b = self.bilinear
        return sum((Fraction(v[i]) * b[i][j] * Fraction(w[j]) for i in range(4) for j in range(4)), Fraction(0))


def contract(v: Sequence, a: HDElement) -> HDElement:
    """Right contraction: plug V into the last slot."""
    v = [Fraction(c) for c in v]
    b = a.bilinear
    k1 = tuple(sum((b[w][j] * v[j] for j in range(4)), Fraction(0)) for w in range(4))
    k0 = sum((a.k1[j] * v[j] for j in range(4)), Fraction(0))
    return HDElement(k0, k1, (0,) * HD2_DIM)


def contraction_matrix(v: Sequence) -> RatMatrix:
    cols = []
    for idx in range(H_DIM):
        e = [Fraction(0)] * H_DIM
        e[idx] = Fraction(1)
        cols.append(contract(v, HDElement.from_vector(e)).vector())
    return RatMatrix.from_columns(cols, H_DIM)


def _commutator(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return a @ b - b @ a


@dataclass(frozen=True)
class Antimorphism:
    """psi : h^2 -> End(HD^{<=2}); ``generators`` act for e1..e4, ``center`` for e5."""

    generators: tuple
    center: RatMatrix

    def matrices(self) -> list[RatMatrix]:
        return list(self.generators) + [self.center]

    def action(self, x: Sequence) -> RatMatrix:
        out = RatMatrix.zeros(H_DIM, H_DIM)
        for c, m in zip(x, self.matrices()):
            if c:
                out = out + m.scale(c)
        return out


def antimorphism_failures(g: GradedLieAlgebra, mats: Sequence[RatMatrix]) -> list[tuple[int, int]]:
    """Basis pairs where psi([x, y]) = -[psi(x), psi(y)] fails."""
    bad = []
    size = mats[0].rows
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = RatMatrix.zeros(size, size)
        for k, c in g.sc(i, j).items():
            lhs = lhs + mats[k].scale(c)
        if lhs != -_commutator(mats[i], mats[j]):
            bad.append((i, j))
    return bad


@lru_cache(maxsize=None)
def psi() -> Antimorphism:
    gens = tuple(contraction_matrix([1 if k == i else 0 for k in range(4)]) for i in range(4))
    # [e1, e3] = [e2, e4] = -4 e5 together with the antimorphism rule
    center = _commutator(gens[X1], gens[Y1]).scale(Fraction(1, 4))
    other = _commutator(gens[X2], gens[Y2]).scale(Fraction(1, 4))
    if center != other:
        raise WellDefinednessFailure("centre action differs between the pairs (e1,e3) and (e2,e4)")
    p = Antimorphism(gens, center)
    bad = antimorphism_failures(hn_algebra(2), p.matrices())
    if bad:
        raise WellDefinednessFailure(f"antimorphism identity fails on {bad}")
    return p


def center_action_candidates() -> dict[str, list[Fraction]]:
    """Scalar produced by e5 on each HD^2 basis form, two readings.

    ``derived`` is (1/4)(A(e1,e3) - A(e3,e1)), which is what the antimorphism
    rule forces; ``literal`` is (1/4)(A(e2,e1) - A(e1,e2)).
    """
    q = Fraction(1, 4)
    return {
        "derived": [q * (f[X1][Y1] - f[Y1][X1]) for f in hd2_forms()],
        "literal": [q * (f[X2][X1] - f[X1][X2]) for f in hd2_forms()],
    }


def exp_contraction(w: Sequence) -> RatMatrix:
    """e^{W contraction} on HD^{<=2}; the series stops since the map is nilpotent."""
    n = contraction_matrix(w)
    return RatMatrix.identity(H_DIM) + n + (n @ n).scale(Fraction(1, 2))


def anti_semidirect(g: GradedLieAlgebra, h_layers: Sequence[Sequence[int]],
                    psi_mats: Sequence[RatMatrix]) -> tuple[GradedLieAlgebra, list[tuple[str, int]]]:
    """g x_psi h for abelian h with bracket ([x,y], psi(y)X - psi(x)Y).

    ``h_layers[k]`` lists the h-indices placed in layer k+1. The new basis
    runs through the layers, g's part of each layer first. Returns the
    algebra and, for each new index, its origin ("g", i) or ("h", a).
    """
    m = sum(len(layer) for layer in h_layers)
    if len(psi_mats) != g.dim or any(p.shape != (m, m) for p in psi_mats):
        raise ValueError("psi must provide an m x m matrix for each basis vector of g")
    if antimorphism_failures(g, psi_mats):
        raise ValueError("psi is not an antimorphism of g")
    if m == 0:
        return g, [("g", i) for i in range(g.dim)]
    g_layers = g.layers if g.layers is not None else [list(range(g.dim))]
    nlayers = max(len(g_layers), len(h_layers))
    origin: list[tuple[str, int]] = []
    layers = []
    for k in range(nlayers):
        start = len(origin)
        if k < len(g_layers):
            origin += [("g", i) for i in g_layers[k]]
        if k < len(h_layers):
            origin += [("h", a) for a in h_layers[k]]
        layers.append(list(range(start, len(origin))))
    gidx = {i: n for n, (kind, i) in enumerate(origin) if kind == "g"}
    hidx = {a: n for n, (kind, a) in enumerate(origin) if kind == "h"}
    brs: dict = {}
    for p, q in itertools.combinations(range(len(origin)), 2):
        (kp, ip), (kq, iq) = origin[p], origin[q]
        out: dict[int, Fraction] = {}
        if kp == "g" and kq == "g":
            out = {gidx[k]: c for k, c in g.sc(ip, iq).items()}
        elif kp == "g" and kq == "h":
            # [(x,0),(0,Y)] = -psi(x) Y
            col = psi_mats[ip].col(iq)
            out = {hidx[a]: -c for a, c in enumerate(col) if c}
        elif kp == "h" and kq == "g":
            col = psi_mats[iq].col(ip)
            out = {hidx[a]: c for a, c in enumerate(col) if c}
        if out:
            brs[(p, q)] = out
    layers = [layer for layer in layers if layer]
    return GradedLieAlgebra(len(origin), brs, layers), origin


@lru_cache(maxsize=None)
def j2_h2() -> GradedLieAlgebra:
    h_layers = [list(range(0, 11)), list(range(11, 15)), [15]]
    alg, _ = anti_semidirect(hn_algebra(2), h_layers, psi().matrices())
    return alg


def hd_basis() -> list[dict]:
    return [{"index": k + 1, "label": lab, "layer": 1 if k < 15 else 2 if k < 20 else 3}
            for k, lab in enumerate(E_LABELS)]


# ---------------------------------------------------------------------------
# harmonic subalgebras
# ---------------------------------------------------------------------------

F_LABELS = tuple(f"F{k}" for k in range(1, 21))

# E indices (0-based) of the HD^2 basis inside j^2
_E_HD2 = {lab: 4 + k for k, lab in enumerate(HD2_LABELS)}


def f_basis(c) -> RatMatrix:
    """Columns F1..F20 of Lie(JL_c) written in E coordinates (21 x 20)."""
    c = parse_rational(c)
    cols = []

    def e(*pairs):
        v = [Fraction(0)] * 21
        for idx, coef in pairs:
            v[idx] += coef
        return v

    x11 = _E_HD2["X1^2"]
    cols += [e((i, 1)) for i in range(4)]
    cols += [e((_E_HD2[s], 1)) for s in ("X1X2", "X1Y1", "X1Y2")]
    cols.append(e((_E_HD2["X2^2"], 1), (x11, -c)))
    cols += [e((_E_HD2[s], 1)) for s in ("X2Y1", "X2Y2")]
    cols.append(e((_E_HD2["Y1^2"], 1), (x11, -1)))
    cols.append(e((_E_HD2["Y1Y2"], 1)))
    cols.append(e((_E_HD2["Y2^2"], 1), (x11, -c)))
    cols.append(e((_E_HD2["Y1X1"], 1)))
    cols += [e((k, 1)) for k in range(15, 21)]
    return RatMatrix.from_columns(cols, 21)


F_LAYERS = [list(range(14)), list(range(14, 19)), [19]]


def constraint_row(c) -> list[Fraction]:
    """Linear form on E coordinates cutting the harmonic first layer."""
    c = parse_rational(c)
    row = [Fraction(0)] * 21
    row[_E_HD2["X1^2"]] = Fraction(1)
    row[_E_HD2["Y1^2"]] = Fraction(1)
    row[_E_HD2["X2^2"]] = c
    row[_E_HD2["Y2^2"]] = c
    return row


def jl_subalgebra(c) -> tuple[GradedLieAlgebra, RatMatrix]:
    c = parse_rational(c)
    if c <= 0:
        raise ValueError("c must be positive")
    emb = f_basis(c)
    return restrict(j2_h2(), emb, F_LAYERS), emb


def constrained_first_layer(kappa: Sequence) -> RatMatrix:
    """Basis (21 x 14) of the first-layer vectors annihilated by ``kappa``.

    ``kappa`` is a nonzero linear form on the 11 HD^2 coordinates.
    """
    from .exactlin import nullspace

    row = [Fraction(0)] * 4 + [Fraction(v) for v in kappa]
    ker = nullspace(RatMatrix.from_rows([row], 15))
    cols = [list(col) + [Fraction(0)] * 6 for col in ker.columns()]
    return RatMatrix.from_columns(cols, 21)


# ---------------------------------------------------------------------------
# automorphisms induced from H^2
# ---------------------------------------------------------------------------

def induced_automorphism(dv1: RatMatrix, dt) -> RatMatrix:
    """21x21 matrix on E coordinates induced by an automorphism of H^2.

    First layer of h^2 maps by ``dv1``, the centre by ``dt``, and jets are
    pushed forward by precomposition with ``dv1^{-1}`` in every slot.
    Raises MembershipFailure when the pushed second-order part leaves HD^2.
    """
    dt = Fraction(dt)
    inv = dv1.inverse()
    out = [[Fraction(0)] * 21 for _ in range(21)]
    for i in range(4):
        for j in range(4):
            out[i][j] = dv1[i, j]
    out[15][15] = dt
    out[20][20] = Fraction(1)
    # first order: a -> a . inv (row vector)
    for j in range(4):
        for i in range(4):
            out[16 + i][16 + j] = inv[j, i]
    # second order: B -> inv^T B inv
    for k, f in enumerate(hd2_forms()):
        b = RatMatrix.from_rows(f)
        pushed = inv.T @ b @ inv
        coords = hd2_coords(pushed.to_rows())
        for r, v in enumerate(coords):
            out[4 + r][4 + k] = v
    return RatMatrix.from_rows(out)


def swap_iso(c) -> RatMatrix:
    """Isomorphism Lie(JL_c) -> Lie(JL_{1/c}) induced by (X1,Y1) <-> (X2,Y2)."""
    c = parse_rational(c)
    if c <= 0:
        raise ValueError("c must be positive")
    t = induced_automorphism(swap_matrix(), 1)
    src = f_basis(c)
    dst = f_basis(1 / c)
    x = solve(dst, t @ src)
    if x is INCONSISTENT:
        raise MembershipFailure("swap does not map the harmonic subalgebras onto each other")
    return x


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def _cell(vec: dict[int, Fraction], prefix: str) -> str:
    if not vec:
        return "0"
    parts = []
    for k, c in sorted(vec.items()):
        name = f"{prefix}{k + 1}"
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{format_rational(c)} {name}")
    return " + ".join(parts).replace("+ -", "- ")


def table_cells(g: GradedLieAlgebra, prefix: str = "E", omit_trivial: bool = False) -> list[list[str]]:
    n = g.dim - 1 if omit_trivial else g.dim
    return [[_cell(g.sc(i, j), prefix) for j in range(n)] for i in range(n)]


def emit_table(g: GradedLieAlgebra, fmt: str = "text", prefix: str = "E",
               omit_trivial: bool = False) -> str | dict:
    """Bracket table; row i, column j holds [b_i, b_j]."""
    if fmt == "json":
        from .liealg import algebra_to_json

        doc = algebra_to_json(g)
        doc["labels"] = [f"{prefix}{k + 1}" for k in range(g.dim)]
        doc["table"] = table_cells(g, prefix, omit_trivial)
        return doc
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    cells = table_cells(g, prefix, omit_trivial)
    n = len(cells)
    labels = [f"{prefix}{k + 1}" for k in range(n)]
    width = max([len(s) for row in cells for s in row] + [len(s) for s in labels] + [1])
    lines = [" " * width + " | " + " ".join(s.rjust(width) for s in labels)]
    lines.append("-" * len(lines[0]))
    for lab, row in zip(labels, cells):
        lines.append(lab.rjust(width) + " | " + " ".join(s.rjust(width) for s in row))
    return "\n".join(lines) + "\n"
