"""Finite-dimensional Lie algebras given by exact structure constants.

An algebra is stored as the brackets ``[e_i, e_j]`` for ``i < j`` together
with an optional layer partition. Everything here is exact; the only
randomness is the seeded sampling in :func:`invariant_report`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactlin import (
    INCONSISTENT,
    RatMatrix,
    add_row,
    format_rational,
    parse_rational,
    rank,
    solve,
    sparse_nullspace,
    sparse_rank,
)

Vector = list  # dense list of Fractions

__all__ = [
    "GradedLieAlgebra",
    "JacobiViolation",
    "LayerViolation",
    "InvariantReport",
    "MorphismCheck",
    "make_algebra",
    "bracket",
    "lower_central_series",
    "derived_series",
    "center_dim",
    "derivations_dim",
    "graded_derivations_dim",
    "h1_dim",
    "h2_dim",
    "generated_subalgebra",
    "restrict",
    "change_basis",
    "verify_morphism",
    "invariant_report",
    "algebra_to_json",
    "algebra_from_json",
]


class JacobiViolation(ValueError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class LayerViolation(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"bracket [e{i}, e{j}] leaves the expected layer")
        self.pair = (i, j)


class GradedLieAlgebra:
    """Structure-constant Lie algebra over Q with an optional stratification.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to a sparse ``{k: coeff}``.
    ``layers`` is a list of index lists, layer 1 first; ``None`` means the
    algebra is treated as a single layer.
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
                 layers: Sequence[Sequence[int]] | None = None, *, validate: bool = True):
        self.dim = dim
        table: list[list[dict[int, Fraction]]] = [[{} for _ in range(dim)] for _ in range(dim)]
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < dim")
            v = {int(k): Fraction(c) for k, c in vec.items() if c}
            if any(not 0 <= k < dim for k in v):
                raise ValueError(f"bracket ({i}, {j}) has an index out of range")
            if v:
                clean[(i, j)] = v
                table[i][j] = v
                table[j][i] = {k: -c for k, c in v.items()}
        self.brackets = clean
        self._table = table
        if layers is not None:
            layers = [sorted(int(i) for i in layer) for layer in layers]
            flat = sorted(i for layer in layers for i in layer)
            if flat != list(range(dim)):
                raise ValueError("layers must partition the basis indices")
        self.layers = layers
        if validate:
            self._check_jacobi()
            if layers is not None:
                self._check_layers()

    # -- basic access -----------------------------------------------------
    def sc(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse coefficients of ``[e_i, e_j]`` (any order)."""
        return self._table[i][j]

    def layer_of(self) -> list[int]:
        """Layer number (1-based) of each basis index."""
        if self.layers is None:
            return [1] * self.dim
        out = [0] * self.dim
        for a, layer in enumerate(self.layers, start=1):
            for i in layer:
                out[i] = a
        return out

    @property
    def layer_dims(self) -> list[int]:
        return [self.dim] if self.layers is None else [len(layer) for layer in self.layers]

    def basis_vector(self, i: int) -> Vector:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def ad(self, x: Sequence) -> RatMatrix:
        cols = [bracket(self, x, self.basis_vector(j)) for j in range(self.dim)]
        return RatMatrix.from_columns(cols, self.dim)

    # -- validation -------------------------------------------------------
    def _sparse_bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            row = self._table[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def jacobi_residual(self, i: int, j: int, k: int) -> dict[int, Fraction]:
        ei, ej, ek = ({i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)})
        total: dict[int, Fraction] = {}
        for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            for key, v in self._sparse_bracket(self._sparse_bracket(a, b), c).items():
                total[key] = total.get(key, 0) + v
        return {key: v for key, v in total.items() if v}

    def _check_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            if self.jacobi_residual(i, j, k):
                raise JacobiViolation(i, j, k)

    def _check_layers(self) -> None:
        lay = self.layer_of()
        s = len(self.layers)
        for (i, j), v in self.brackets.items():
            target = lay[i] + lay[j]
            if target > s or any(lay[k] != target for k in v):
                raise LayerViolation(i, j)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedLieAlgebra) and self.dim == other.dim
                and self.brackets == other.brackets and self.layers == other.layers)

    def __repr__(self) -> str:
        return f"GradedLieAlgebra(dim={self.dim}, layers={self.layer_dims})"


def make_algebra(dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                 layers: Sequence[Sequence[int]] | None = None) -> GradedLieAlgebra:
    conv = {key: {k: parse_rational(c) if isinstance(c, str) else Fraction(c) for k, c in v.items()}
            for key, v in brackets.items()}
    return GradedLieAlgebra(dim, conv, layers)


def bracket(g: GradedLieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != g.dim or len(y) != g.dim:
        raise ValueError("vector length does not match the algebra")
    out = [Fraction(0)] * g.dim
    for i, a in enumerate(x):
        if not a:
            continue
        row = g._table[i]
        for j, b in enumerate(y):
            if not b:
                continue
            ab = a * b
            for k, c in row[j].items():
                out[k] += ab * c
    return out


# ---------------------------------------------------------------------------
# series and centre
# ---------------------------------------------------------------------------

def _span_rank(vectors: Iterable[Sequence]) -> int:
    return sparse_rank({k: v for k, v in enumerate(vec) if v} for vec in vectors)


def _independent(vectors: Iterable[Sequence]) -> list[Vector]:
    """Greedy basis of the span, keeping input order."""
    kept: list[Vector] = []
    piv: dict = {}
    for vec in vectors:
        if add_row(piv, {k: v for k, v in enumerate(vec) if v}):
            kept.append(list(vec))
    return kept


def _bracket_span(g: GradedLieAlgebra, xs: Sequence[Sequence], ys: Sequence[Sequence]) -> list[Vector]:
    return _independent(bracket(g, x, y) for x in xs for y in ys)


def lower_central_series(g: GradedLieAlgebra) -> list[int]:
    """Dimensions of g, [g,g], [g,[g,g]], ... until the series stabilises."""
    basis = [g.basis_vector(i) for i in range(g.dim)]
    dims = [g.dim]
    cur = basis
    while True:
        cur = _bracket_span(g, basis, cur)
        if len(cur) == dims[-1]:
            break
        dims.append(len(cur))
        if not cur:
            break
    return dims


def derived_series(g: GradedLieAlgebra) -> list[int]:
    cur = [g.basis_vector(i) for i in range(g.dim)]
    dims = [g.dim]
    while True:
        cur = _bracket_span(g, cur, cur)
        if len(cur) == dims[-1]:
            break
        dims.append(len(cur))
        if not cur:
            break
    return dims


def center_dim(g: GradedLieAlgebra) -> int:
    # x central iff sum_i x_i c_{ij}^k = 0 for all j, k
    rows = []
    for j in range(g.dim):
        for k in range(g.dim):
            r = {i: g.sc(i, j).get(k) for i in range(g.dim)}
            rows.append({i: v for i, v in r.items() if v})
    return g.dim - sparse_rank(rows)


# ---------------------------------------------------------------------------
# derivations and cohomology
# ---------------------------------------------------------------------------

def _derivation_rows(g: GradedLieAlgebra, graded: bool) -> tuple[list[dict], int]:
    n = g.dim
    lay = g.layer_of()

    def var(k: int, l: int):
        # D e_l = sum_k D[k, l] e_k
        if graded and lay[k] != lay[l]:
            return None
        return k * n + l

    rows = []
    for i, j in itertools.combinations(range(n), 2):
        eq: dict[int, dict[int, Fraction]] = {}

        def add(m: int, v, coef: Fraction) -> None:
            if v is None or not coef:
                return
            r = eq.setdefault(m, {})
            r[v] = r.get(v, 0) + coef

        # D[e_i, e_j]
        for l, c in g.sc(i, j).items():
            for m in range(n):
                add(m, var(m, l), c)
        # - [D e_i, e_j] - [e_i, D e_j]
        for k in range(n):
            for m, c in g.sc(k, j).items():
                add(m, var(k, i), -c)
            for m, c in g.sc(i, k).items():
                add(m, var(k, j), -c)
        for r in eq.values():
            r = {v: c for v, c in r.items() if c}
            if r:
                rows.append(r)
    return rows, n * n


def derivations_dim(g: GradedLieAlgebra) -> int:
    rows, nvars = _derivation_rows(g, graded=False)
    return nvars - sparse_rank(rows)


def graded_derivations_dim(g: GradedLieAlgebra) -> int:
    """Dimension of the degree-0 derivations (each layer mapped into itself)."""
    rows, _ = _derivation_rows(g, graded=True)
    lay = g.layer_of()
    nvars = sum(1 for k in range(g.dim) for l in range(g.dim) if lay[k] == lay[l])
    return nvars - sparse_rank(rows)


def derivation_basis(g: GradedLieAlgebra, graded: bool = False) -> list[RatMatrix]:
    rows, nvars = _derivation_rows(g, graded)
    n = g.dim
    if graded:
        lay = g.layer_of()
        for k in range(n):
            for l in range(n):
                if lay[k] != lay[l]:
                    rows.append({k * n + l: Fraction(1)})
    return [RatMatrix(n, n, v) for v in sparse_nullspace(rows, nvars)]


def _d1_rows(g: GradedLieAlgebra) -> list[dict]:
    # (d1 xi)(e_a, e_b) = -xi([e_a, e_b]); one row per pair, columns = g*
    return [{k: -c for k, c in g.sc(a, b).items()} for a, b in itertools.combinations(range(g.dim), 2)]


def _d2_rows(g: GradedLieAlgebra) -> list[dict]:
    n = g.dim
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def omega_coord(k: int, c: int):
        if k < c:
            return index[(k, c)], Fraction(1)
        if k > c:
            return index[(c, k)], Fraction(-1)
        return None, Fraction(0)

    rows = []
    for x, y, z in itertools.combinations(range(n), 3):
        r: dict[int, Fraction] = {}
        # d w (x,y,z) = -w([x,y],z) + w([x,z],y) - w([y,z],x)
        for (a, b, other), sign in (((x, y, z), -1), ((x, z, y), 1), ((y, z, x), -1)):
            for k, c in g.sc(a, b).items():
                col, s = omega_coord(k, other)
                if col is not None:
                    r[col] = r.get(col, 0) + sign * s * c
        rows.append({k: v for k, v in r.items() if v})
    return rows


def h1_dim(g: GradedLieAlgebra) -> int:
    return g.dim - sparse_rank(_d1_rows(g))


def h2_dim(g: GradedLieAlgebra) -> int:
    n2 = g.dim * (g.dim - 1) // 2
    return (n2 - sparse_rank(_d2_rows(g))) - sparse_rank(_d1_rows(g))


# ---------------------------------------------------------------------------
# subalgebras and morphisms
# ---------------------------------------------------------------------------

def restrict(g: GradedLieAlgebra, basis: RatMatrix, layers: Sequence[Sequence[int]] | None = None,
             *, validate: bool = True) -> GradedLieAlgebra:
    """Structure constants of the subalgebra spanned by the columns of ``basis``.

    Raises ``ValueError`` when the span is not closed under the bracket.
    """
    cols = basis.columns()
    k = len(cols)
    brs = {}
    pairs = list(itertools.combinations(range(k), 2))
    rhs = RatMatrix.from_columns([bracket(g, cols[i], cols[j]) for i, j in pairs], g.dim) if pairs else None
    if rhs is not None:
        x = solve(basis, rhs)
        if x is INCONSISTENT:
            raise ValueError("span is not closed under the bracket")
        for col, (i, j) in enumerate(pairs):
            v = {m: x[m, col] for m in range(k) if x[m, col]}
            if v:
                brs[(i, j)] = v
    return GradedLieAlgebra(k, brs, layers, validate=validate)


def change_basis(g: GradedLieAlgebra, p: RatMatrix) -> GradedLieAlgebra:
    """Same algebra written in the basis given by the columns of invertible ``p``.

    The layers survive when ``p`` maps each layer into itself; otherwise the
    result is ungraded.
    """
    if rank(p) != g.dim:
        raise ValueError("change of basis must be invertible")
    layers = g.layers if g.layers is not None and _preserves_layers(g, p) else None
    return restrict(g, p, layers=layers)


def _preserves_layers(g: GradedLieAlgebra, p: RatMatrix) -> bool:
    lay = g.layer_of()
    return all(lay[i] == lay[j] for i in range(g.dim) for j in range(g.dim) if p[i, j])


def generated_subalgebra(g: GradedLieAlgebra, seed: RatMatrix) -> tuple[GradedLieAlgebra, RatMatrix]:
    """Smallest subalgebra containing the column span of ``seed``.

    The adapted basis lists the seed columns first, then the new directions
    produced by brackets with layer 1, one layer at a time. Layers are kept
    when the result is graded by them.
    """
    layer1 = seed.columns()
    if _span_rank(layer1) != len(layer1):
        raise ValueError("seed columns must be linearly independent")
    basis = list(layer1)
    layers = [list(range(len(basis)))]
    prev = layer1
    while prev:
        cand = [bracket(g, x, y) for x in layer1 for y in prev]
        new = _independent(basis + cand)[len(basis):]
        if not new:
            break
        layers.append(list(range(len(basis), len(basis) + len(new))))
        basis.extend(new)
        prev = new
    emb = RatMatrix.from_columns(basis, g.dim)
    try:
        sub = restrict(g, emb, layers)
    except LayerViolation:
        sub = restrict(g, emb, None)
    return sub, emb


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    failing_pair: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_morphism(g: GradedLieAlgebra, h: GradedLieAlgebra, lmap: RatMatrix) -> MorphismCheck:
    """Check that ``lmap`` (g-coords to h-coords) is a Lie algebra isomorphism."""
    if lmap.shape != (h.dim, g.dim) or g.dim != h.dim:
        return MorphismCheck(False, None, "shape mismatch")
    if rank(lmap) != g.dim:
        return MorphismCheck(False, None, "not invertible")
    images = lmap.columns()
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = lmap.apply(bracket(g, g.basis_vector(i), g.basis_vector(j)))
        if lhs != bracket(h, images[i], images[j]):
            return MorphismCheck(False, (i, j), "bracket not preserved")
    return MorphismCheck(True)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

EXACT_FIELDS = ("dim", "layerDims", "lowerCentralDims", "derivedDims", "centerDim",
                "derDim", "gradedDerDim", "h1Dim", "h2Dim")


@dataclass
class InvariantReport:
    dim: int
    layerDims: list[int]
    lowerCentralDims: list[int]
    derivedDims: list[int]
    centerDim: int
    derDim: int
    gradedDerDim: int
    h1Dim: int
    h2Dim: int
    sampledMaxAdRank: int
    seed: int = 0
    trials: int = 0
    extra: dict = field(default_factory=dict)

    def exact(self) -> dict:
        out = {name: getattr(self, name) for name in EXACT_FIELDS}
        out.update(self.extra)
        return out

    def differing_fields(self, other: InvariantReport) -> list[str]:
        a, b = self.exact(), other.exact()
        return [k for k in a if a.get(k) != b.get(k)] + [k for k in b if k not in a]

    def to_json(self) -> dict:
        return asdict(self)


def sample_vectors(dim: int, seed: int, trials: int) -> list[Vector]:
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-9, 9)) for _ in range(dim)] for _ in range(trials)]


def sampled_max_ad_rank(g: GradedLieAlgebra, seed: int = 0, trials: int = 8) -> int:
    cands = [g.basis_vector(i) for i in range(g.dim)] + sample_vectors(g.dim, seed, trials)
    return max((rank(g.ad(x)) for x in cands), default=0)


def invariant_report(g: GradedLieAlgebra, seed: int = 0, trials: int = 8,
                     extra: Mapping[str, object] | None = None) -> InvariantReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return InvariantReport(
        dim=g.dim,
        layerDims=g.layer_dims,
        lowerCentralDims=lower_central_series(g),
        derivedDims=derived_series(g),
        centerDim=center_dim(g),
        derDim=derivations_dim(g),
        gradedDerDim=graded_derivations_dim(g),
        h1Dim=h1_dim(g),
        h2Dim=h2_dim(g),
        sampledMaxAdRank=sampled_max_ad_rank(g, seed, trials),
        seed=seed,
        trials=trials,
        extra=dict(extra or {}),
    )


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def algebra_to_json(g: GradedLieAlgebra) -> dict:
    return {
        "dim": g.dim,
        "layers": g.layers if g.layers is not None else [list(range(g.dim))],
        "brackets": [
            {"i": i, "j": j, "v": {str(k): format_rational(c) for k, c in sorted(v.items())}}
            for (i, j), v in sorted(g.brackets.items())
        ],
    }


def algebra_from_json(doc: Mapping) -> GradedLieAlgebra:
    brs = {(int(b["i"]), int(b["j"])): {int(k): parse_rational(c) for k, c in b["v"].items()}
           for b in doc.get("brackets", [])}
    return GradedLieAlgebra(int(doc["dim"]), brs, doc.get("layers"))
