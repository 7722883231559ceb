"""Williamson normal form and the sub-Laplacian class invariant.

For symmetric positive definite ``M`` (2n x 2n) we find symplectic ``S`` with
``S^T M S = diag(L, L)``. The diagonal entries are the moduli of the
eigenvalues of ``Omega M``; for diagonal ``M = diag(mu, nu)`` they are
``sqrt(mu_i nu_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

TOL = 1e-9


class NotPositiveDefinite(ValueError):
    pass


class ConvergenceFailure(RuntimeError):
    def __init__(self, message: str, residuals: dict):
        super().__init__(f"{message}: {residuals}")
        self.residuals = residuals


def omega(n: int) -> np.ndarray:
    z, i = np.zeros((n, n)), np.eye(n)
    return np.block([[z, i], [-i, z]])


def _check_spd(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ValueError("expected a square matrix of even size")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("matrix is not positive definite") from None
    return m


def symplectic_spectrum(m) -> np.ndarray:
    """Symplectic eigenvalues, sorted descending."""
    m = _check_spd(m)
    n = m.shape[0] // 2
    # A = M^{1/2}; A Omega A is antisymmetric with eigenvalues +-i lambda_j
    w, q = np.linalg.eigh(m)
    a = (q * np.sqrt(w)) @ q.T
    k = a @ omega(n) @ a
    vals = np.abs(np.linalg.eigvalsh(1j * k))
    return np.sort(vals)[::-1][::2].copy()


@dataclass
class SymplecticDecomposition:
    n: int
    S: np.ndarray
    lam: np.ndarray
    residualSymplectic: float
    residualDiagonal: float

    def to_json(self) -> dict:
        return {"lambda": self.lam.tolist(), "S": self.S.tolist(),
                "residuals": {"symplectic": self.residualSymplectic, "diagonal": self.residualDiagonal}}


def williamson(m, tol: float = TOL) -> SymplecticDecomposition:
    m = _check_spd(m)
    n = m.shape[0] // 2
    w, q = np.linalg.eigh(m)
    a_inv = (q / np.sqrt(w)) @ q.T
    # K = M^{-1/2} Omega M^{-1/2} has eigenvalues +-i / lambda_j
    k = a_inv @ omega(n) @ a_inv
    k = 0.5 * (k - k.T)
    t, z = scipy.linalg.schur(k, output="real")
    blocks = []
    i = 0
    while i < 2 * n:
        b = t[i, i + 1]
        u, v = z[:, i], z[:, i + 1]
        if b < 0:
            u, v, b = v, u, -b
        blocks.append((1.0 / b, u, v))
        i += 2
    blocks.sort(key=lambda blk: -blk[0])
    lam = np.array([blk[0] for blk in blocks])
    o = np.column_stack([blk[1] for blk in blocks] + [blk[2] for blk in blocks])
    s = a_inv @ o @ np.diag(np.sqrt(np.concatenate([lam, lam])))
    om = omega(n)
    res_s = float(np.max(np.abs(s.T @ om @ s - om)))
    res_d = float(np.max(np.abs(s.T @ m @ s - np.diag(np.concatenate([lam, lam])))))
    out = SymplecticDecomposition(n, s, lam, res_s, res_d)
    scale = max(1.0, float(np.max(lam)))
    if res_s > tol * scale or res_d > tol * scale:
        raise ConvergenceFailure("Williamson residuals above tolerance",
                                 {"symplectic": res_s, "diagonal": res_d})
    return out


def classify(m) -> float:
    """c = lambda_2 / lambda_1 in (0, 1] for a 4x4 SPD coefficient matrix."""
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError("classification is defined for 4x4 matrices")
    lam = symplectic_spectrum(m)
    return float(lam[1] / lam[0])


def congruence_invariance(m, s, tol: float = 1e-7) -> bool:
    s = np.asarray(s, dtype=float)
    n = s.shape[0] // 2
    if np.max(np.abs(s.T @ omega(n) @ s - omega(n))) > 1e-9:
        raise ValueError("S is not symplectic")
    m = np.asarray(m, dtype=float)
    mt = s.T @ m @ s
    mt = 0.5 * (mt + mt.T)
    return abs(classify(mt) - classify(m)) <= tol


def random_symplectic(rng: np.random.Generator, n: int = 2, steps: int = 6) -> np.ndarray:
    """Product of seeded symplectic generators (shears, symplectic rotations, squeezes)."""
    s = np.eye(2 * n)
    for _ in range(steps):
        kind = rng.integers(3)
        if kind == 0:
            b = rng.uniform(-1, 1, (n, n))
            b = b + b.T
            g = np.block([[np.eye(n), b], [np.zeros((n, n)), np.eye(n)]])
            if rng.integers(2):
                g = g.T
        elif kind == 1:
            qn, _ = np.linalg.qr(rng.normal(size=(n, n)))
            g = np.block([[qn, np.zeros((n, n))], [np.zeros((n, n)), qn]])
        else:
            d = np.exp(rng.uniform(-0.5, 0.5, n))
            g = np.diag(np.concatenate([d, 1 / d]))
        s = s @ g
    return s


def random_spd(rng: np.random.Generator, n: int = 4, max_cond: float = 1e6) -> np.ndarray:
    """Seeded SPD matrix of spectral norm 1 and condition number <= ``max_cond``.

    One eigenvalue is pinned to 1 and one to ``1/max_cond`` half of the time,
    so the extreme end of the range is exercised.
    """
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    w = np.exp(rng.uniform(-np.log(max_cond), 0, n))
    idx = rng.permutation(n)
    w[idx[0]] = 1.0
    if rng.integers(2):
        w[idx[1]] = 1.0 / max_cond
    m = (q * w) @ q.T
    return 0.5 * (m + m.T)
