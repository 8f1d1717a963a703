"""Small dense linear algebra for dimension <= 4 (16 for bipartite vectors).

Eigenvectors of symmetric unitaries are produced REAL by diagonalizing the
commuting real and imaginary parts with cyclic Jacobi rotations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import (
    DegeneracyResolutionFailure,
    DimensionMismatch,
    NotNormalized,
    NotProduct,
    NotSymmetric,
    NotUnitary,
)

TWO_PI = 2.0 * math.pi


def unitarity_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[1])).max())


def check_unitary(m, tol: Tolerances | None = None, name: str = "matrix") -> np.ndarray:
    tol = get_tolerances(tol)
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotUnitary(f"{name} has non-finite entries")
    res = unitarity_residual(m)
    if res >= tol.unitary:
        raise NotUnitary(f"{name} is not unitary (residual {res:.3e})")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Eigenphases (radians, in [0, 2pi)) and real orthonormal eigenvector columns."""

    phases: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * np.exp(1j * self.phases)) @ v.T


def jacobi_eigh(a: np.ndarray, tol: float = 1e-15, max_sweeps: int = 50):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Returns (eigenvalues, V) with a = V diag(w) V^T; eigenvalues unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.abs(a).max(), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                _rotate(a, v, p, q, c, s)
    return np.diag(a).copy(), v


def _rotate(a, v, p, q, c, s):
    # a <- J^T a J, v <- v J with J the (p, q) Givens rotation
    ap = a[:, p].copy()
    aq = a[:, q].copy()
    a[:, p] = c * ap - s * aq
    a[:, q] = s * ap + c * aq
    ap = a[p, :].copy()
    aq = a[q, :].copy()
    a[p, :] = c * ap - s * aq
    a[q, :] = s * ap + c * aq
    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def joint_jacobi(mats: list[np.ndarray], v: np.ndarray, tol: float = 1e-14, max_sweeps: int = 30):
    """Joint diagonalization of real symmetric matrices (Cardoso-Souloumiac angles).

    ``mats`` are already expressed in the basis ``v``; both are updated in place.
    """
    n = v.shape[0]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = np.array([[m[p, p] - m[q, q], 2.0 * m[p, q]] for m in mats])
                gg = g.T @ g
                ton = gg[0, 0] - gg[1, 1]
                toff = gg[0, 1] + gg[1, 0]
                theta = 0.5 * math.atan2(toff, ton + math.hypot(ton, toff))
                c, s = math.cos(theta), math.sin(theta)
                if abs(s) > tol:
                    rotated = True
                    # Cardoso's convention rotates with +s on (p,q); reuse _rotate with -s
                    for m in mats:
                        _rotate(m, np.eye(n), p, q, c, -s)
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp + s * vq
                    v[:, q] = -s * vp + c * vq
        if not rotated:
            break
    return mats, v


def _fix_sign(v: np.ndarray) -> np.ndarray:
    for j in range(v.shape[1]):
        col = v[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size and col[nz[0]] < 0:
            v[:, j] = -col
    return v


def eig_symmetric_unitary(m, tol: Tolerances | None = None, cluster: float = 1e-6) -> EigenSystem:
    """Real orthonormal eigenbasis of a complex symmetric unitary matrix.

    M = X + iY with X, Y real symmetric and commuting. X is diagonalized first,
    then Y inside each (near-)degenerate X eigenspace, followed by a joint
    Jacobi polish of the pair. Output is sorted by eigenphase in [0, 2pi);
    equal phases are ordered lexicographically by eigenvector entries.
    """
    tol = get_tolerances(tol)
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {m.shape}")
    if np.abs(m - m.T).max() >= tol.symmetric:
        raise NotSymmetric(f"matrix is not symmetric (residual {np.abs(m - m.T).max():.3e})")
    check_unitary(m, tol)
    n = m.shape[0]
    x = 0.5 * (m.real + m.real.T)
    y = 0.5 * (m.imag + m.imag.T)

    w, v = jacobi_eigh(x)
    order = np.argsort(w)
    w, v = w[order], v[:, order]
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and w[stop] - w[stop - 1] < cluster:
            stop += 1
        if stop - start > 1:
            block = v[:, start:stop]
            _, r = jacobi_eigh(block.T @ y @ block)
            v[:, start:stop] = block @ r
        start = stop

    xs, ys = v.T @ x @ v, v.T @ y @ v
    joint_jacobi([xs, ys], v)
    v = _fix_sign(v)

    phases = np.angle(np.einsum("ik,ij,jk->k", v, m, v)) % TWO_PI
    phases[phases > TWO_PI - 1e-12] = 0.0
    order = _phase_order(phases, v)
    es = EigenSystem(phases[order], v[:, order])
    res = np.abs(m @ es.vectors - es.vectors * np.exp(1j * es.phases)).max()
    if res > tol.degeneracy or np.abs(es.vectors.T @ es.vectors - np.eye(n)).max() > 1e2 * tol.orthonormal:
        raise DegeneracyResolutionFailure(f"eigen residual {res:.3e}")
    return es


def _phase_order(phases: np.ndarray, v: np.ndarray, tie: float = 1e-9) -> list[int]:
    idx = sorted(range(len(phases)), key=lambda k: phases[k])
    groups, cur = [], [idx[0]]
    for k in idx[1:]:
        if phases[k] - phases[cur[-1]] < tie:
            cur.append(k)
        else:
            groups.append(cur)
            cur = [k]
    groups.append(cur)
    out = []
    for g in groups:
        out.extend(sorted(g, key=lambda k: tuple(np.round(v[:, k], 9))))
    return out


def schmidt_svd(v, dim_a: int, dim_b: int, tol: Tolerances | None = None):
    """Schmidt decomposition ``v = sum_k c_k a_k (x) b_k``.

    Coefficients are returned in INCREASING order; ``basis_a[:, k]`` and
    ``basis_b[:, k]`` belong to ``coefficients[k]``.
    """
    tol = get_tolerances(tol)
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != dim_a * dim_b:
        raise DimensionMismatch(f"vector of length {v.size} is not {dim_a}x{dim_b}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol.normalized:
        raise NotNormalized(f"state norm {norm:.12g}")
    u, s, vh = np.linalg.svd(v.reshape(dim_a, dim_b))
    k = len(s)
    return s[::-1].copy(), u[:, :k][:, ::-1].copy(), vh[:k, :].T[:, ::-1].copy()


def schmidt_coefficients(v, dim_a: int, dim_b: int) -> np.ndarray:
    """Increasing Schmidt coefficients without the normalization check."""
    s = np.linalg.svd(np.asarray(v, dtype=complex).reshape(dim_a, dim_b), compute_uv=False)
    return s[::-1]


def factor_rank1(v, dim_a: int, dim_b: int, tol: Tolerances | None = None):
    """Split a product vector into unit factors ``a``, ``b`` with ``v = a (x) b``.

    The first nonzero entry of ``a`` is made real and nonnegative; any norm of
    ``v`` different from one is carried by ``b``.
    """
    tol = get_tolerances(tol)
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != dim_a * dim_b:
        raise DimensionMismatch(f"vector of length {v.size} is not {dim_a}x{dim_b}")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise NotProduct("zero vector")
    u, s, vh = np.linalg.svd(v.reshape(dim_a, dim_b) / norm)
    if s[0] < 1.0 - tol.rank1:
        raise NotProduct(f"largest Schmidt coefficient {s[0]:.12g} below 1 - {tol.rank1:g}")
    a = u[:, 0]
    b = vh[0, :] * s[0] * norm
    nz = np.flatnonzero(np.abs(a) > 1e-12)
    ph = a[nz[0]] / abs(a[nz[0]])
    return a / ph, b * ph


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    if dim not in (2, 4):
        raise DimensionMismatch(f"dim must be 2 or 4, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
