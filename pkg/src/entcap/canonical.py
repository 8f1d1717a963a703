"""Canonical decomposition g = e^{i phase} (UA (x) UB) U_d(alpha) (VA (x) VB).

U_d(alpha) = exp(-i (ax XX + ay YY + az ZZ)) is diagonal in the magic basis
with eigenvalues exp(-i lambda_k). Two flavours of alpha exist:

* ``InteractionVector``: the raw form returned by ``decompose``. Components
  lie in [0, pi/2), sorted descending, and reproduce the gate exactly.
* ``ChamberPoint``: pi/4 >= ax >= ay >= az >= 0, produced by
  ``canonicalize_capability``. Reaching it may need the reflection
  alpha -> pi/2 - alpha, which involves complex conjugation, so a chamber
  point only carries the entangling capability, never the gate itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import (
    DimensionMismatch,
    InconsistentPhases,
    NotCanonical,
    NotMaximallyEntangled,
    NotOrthogonal,
    NumericalFailure,
    OutOfRange,
    ReconstructionFailure,
)
from .magic import PAULIS, Q, QH, concurrence, real_in_magic
from .numerics import check_unitary, eig_symmetric_unitary, factor_rank1

HALF_PI = 0.5 * math.pi
QUARTER_PI = 0.25 * math.pi
_SNAP = 1e-12


class InteractionVector(NamedTuple):
    x: float
    y: float
    z: float


class ChamberPoint(NamedTuple):
    x: float
    y: float
    z: float


class Symmetry(NamedTuple):
    """One step of ``canonicalize_capability``.

    ``("reflect", j, j)`` maps component j to pi/2 - alpha_j;
    ``("swap", i, j)`` exchanges components i and j.
    """

    kind: str
    i: int
    j: int


def lambdas_from_alphas(alpha) -> np.ndarray:
    ax, ay, az = (float(a) for a in alpha)
    return np.array([ax - ay + az, -ax + ay + az, -ax - ay - az, ax + ay - az])


def _reduce(a: float) -> float:
    r = math.fmod(a, HALF_PI)
    if r < 0:
        r += HALF_PI
    if r > HALF_PI - _SNAP:
        r -= HALF_PI
    return 0.0 if abs(r) < _SNAP else r


def alphas_from_lambdas(lam, tol: Tolerances | None = None) -> InteractionVector:
    tol = get_tolerances(tol)
    lam = np.asarray(lam, dtype=float)
    total = float(np.sum(lam))
    off = abs(total - 2 * math.pi * round(total / (2 * math.pi)))
    if off > tol.phase_sum:
        raise InconsistentPhases(f"lambda phases sum to {total!r}, not a multiple of 2pi")
    l1, l2, _, l4 = lam
    return InteractionVector(_reduce((l1 + l4) / 2), _reduce((l2 + l4) / 2), _reduce((l1 + l2) / 2))


def build_ud(alpha) -> np.ndarray:
    """U_d(alpha) assembled from its magic-basis eigenvalues."""
    return (Q * np.exp(-1j * lambdas_from_alphas(alpha))) @ QH


def _as_columns(basis) -> np.ndarray:
    if isinstance(basis, np.ndarray) and basis.ndim == 2:
        cols = np.asarray(basis, dtype=complex)
    else:
        cols = np.column_stack([np.asarray(b, dtype=complex).ravel() for b in basis])
    if cols.shape != (4, 4):
        raise DimensionMismatch(f"need four two-qubit states, got shape {cols.shape}")
    return cols


def _perp(v: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def _det1(u: np.ndarray) -> np.ndarray:
    return u / np.sqrt(np.linalg.det(u))


def local_equivalents_from_me_basis(basis, tol: Tolerances | None = None):
    """Local unitaries mapping a maximally entangled basis onto the magic basis.

    ``basis`` holds four orthonormal maximally entangled states (as columns
    or as a sequence). Returns ``(UA, UB, zetas)`` with determinant-one
    ``UA``, ``UB`` and ``(UA (x) UB) exp(i zeta_k) psi_k = Phi_k``.
    """
    tol = get_tolerances(tol)
    cols = _as_columns(basis)
    for k in range(4):
        if concurrence(cols[:, k], tol) <= 1.0 - tol.maximal:
            raise NotMaximallyEntangled(f"basis state {k + 1} is not maximally entangled")
    gram = cols.conj().T @ cols
    if np.abs(gram - np.eye(4)).max() > tol.unitary:
        raise NotOrthogonal("basis states are not orthonormal")

    bar = np.column_stack([real_in_magic(cols[:, k], tol)[1] for k in range(4)])
    s = 1.0 / math.sqrt(2.0)
    e, f = factor_rank1(s * (bar[:, 0] + 1j * bar[:, 1]), 2, 2, tol)
    f = f / np.linalg.norm(f)
    # e_perp (x) f_perp = (bar1 - i bar2)/sqrt2; pin e_perp to the exact complement of e
    rest = s * (bar[:, 0] - 1j * bar[:, 1])
    e_perp = _perp(e)
    f_perp = np.kron(e_perp.conj(), np.eye(2)) @ rest
    f_perp = _perp(f) * np.exp(1j * np.angle(np.vdot(_perp(f), f_perp)))
    ua = np.outer([1, 0], e.conj()) + np.outer([0, 1], e_perp.conj())
    ub = np.outer([1, 0], f.conj()) + np.outer([0, 1], f_perp.conj())

    # rotate the image of bar3 onto Phi_3 with diag(1, e^{i d}) (x) diag(1, e^{-i d})
    t3 = np.kron(ua, ub) @ bar[:, 2]
    delta = -0.5 * np.angle(-t3[2] / t3[1])
    ua = np.diag([1, np.exp(1j * delta)]) @ ua
    ub = np.diag([1, np.exp(-1j * delta)]) @ ub
    ua, ub = _det1(ua), _det1(ub)

    mapped = np.kron(ua, ub) @ cols
    zetas = -np.angle(np.einsum("ik,ik->k", Q.conj(), mapped))
    res = np.abs(mapped * np.exp(1j * zetas) - Q).max()
    if res > tol.reconstruction:
        raise NumericalFailure(f"local equivalence residual {res:.3e}")
    return ua, ub, zetas


@dataclass(frozen=True, eq=False)
class CanonicalDecomposition:
    ua: np.ndarray
    ub: np.ndarray
    va: np.ndarray
    vb: np.ndarray
    alpha: InteractionVector
    phase: float

    def reconstruct(self) -> np.ndarray:
        return (
            np.exp(1j * self.phase)
            * np.kron(self.ua, self.ub)
            @ build_ud(self.alpha)
            @ np.kron(self.va, self.vb)
        )

    def residual(self, gate) -> float:
        return float(np.abs(self.reconstruct() - np.asarray(gate)).max())


_I2 = np.eye(2, dtype=complex)


def swap_local(i: int, j: int) -> np.ndarray:
    """Determinant-one Clifford c with (c(x)c) U_d(a) (c(x)c)^dag = U_d(a with i<->j)."""
    return 1j * (PAULIS[i] + PAULIS[j]) / math.sqrt(2.0)


class _Frame:
    """Mutable bookkeeping for e^{i phase} (ua(x)ub) U_d(alpha) (va(x)vb)."""

    def __init__(self, phase, ua, ub, alpha, va, vb):
        self.phase, self.ua, self.ub, self.va, self.vb = phase, ua, ub, va, vb
        self.alpha = [float(a) for a in alpha]

    def shift(self, j: int, m: int):
        # U_d(a) = (-i S_j)^m U_d(a - m pi/2 e_j),  -i S_j = i (i sigma_j)(x)(i sigma_j)
        p = 1j * PAULIS[j]
        for _ in range(m % 4):
            self.ua = self.ua @ p
            self.ub = self.ub @ p
            self.phase += HALF_PI
        self.alpha[j] -= m * HALF_PI

    def reduce(self):
        for j in range(3):
            m = math.floor(self.alpha[j] / HALF_PI)
            self.shift(j, m)
            if self.alpha[j] > HALF_PI - _SNAP:
                self.shift(j, 1)
            if abs(self.alpha[j]) < _SNAP:
                self.alpha[j] = 0.0

    def flip(self, j: int):
        # U_d(a) = (i s_j (x) 1) U_d(a') (i s_j (x) 1) * (-1), a' = a with the other two negated
        p = 1j * PAULIS[j]
        self.ua = self.ua @ p
        self.va = p @ self.va
        self.phase += math.pi
        for k in range(3):
            if k != j:
                self.alpha[k] = -self.alpha[k]

    def swap(self, i: int, j: int):
        c = swap_local(i, j)
        ch = c.conj().T
        self.ua, self.ub = self.ua @ ch, self.ub @ ch
        self.va, self.vb = c @ self.va, c @ self.vb
        self.alpha[i], self.alpha[j] = self.alpha[j], self.alpha[i]

    def sort_descending(self):
        for _ in range(3):
            for i in range(2):
                if self.alpha[i] < self.alpha[i + 1]:
                    self.swap(i, i + 1)


def _lex_less(a, b, eps=1e-9) -> bool:
    for x, y in zip(a, b):
        if abs(x - y) > eps:
            return x < y
    return False


def _candidate(alpha, flip):
    a = list(alpha)
    if flip is not None:
        a = [v if k == flip else -v for k, v in enumerate(a)]
    return sorted((_reduce(v) for v in a), reverse=True)


def decompose(gate, tol: Tolerances | None = None) -> CanonicalDecomposition:
    """Constructive canonical decomposition of a two-qubit unitary.

    The eigenbasis of g^T g (transpose taken in the magic basis) supplies
    VA, VB; the images e^{-i eps_k} g psi_k supply UA, UB and the
    non-local phases. Among the local-equivalent raw forms of alpha the
    lexicographically smallest one is returned, so locally equivalent gates
    share the same alpha.
    """
    tol = get_tolerances(tol)
    g = check_unitary(gate, tol, "gate")
    if g.shape != (4, 4):
        raise DimensionMismatch(f"gate must be 4x4, got {g.shape}")
    gm = QH @ g @ Q
    es = eig_symmetric_unitary(gm.T @ gm, tol)
    eps = 0.5 * es.phases
    psi = Q @ es.vectors
    va, vb, xi = local_equivalents_from_me_basis(psi, tol)
    psit = (g @ psi) * np.exp(-1j * eps)
    wa, wb, zeta = local_equivalents_from_me_basis(psit, tol)

    nu = zeta - xi - eps
    phase = -float(np.sum(nu)) / 4.0
    lam = nu + phase
    alpha = ((lam[0] + lam[3]) / 2, (lam[1] + lam[3]) / 2, (lam[0] + lam[1]) / 2)
    fr = _Frame(phase, wa.conj().T, wb.conj().T, alpha, va, vb)

    best, best_flip = None, None
    for flip in (None, 0, 1, 2):
        cand = _candidate(fr.alpha, flip)
        if best is None or _lex_less(cand, best):
            best, best_flip = cand, flip
    if best_flip is not None:
        fr.flip(best_flip)
    fr.reduce()
    fr.sort_descending()

    dec = CanonicalDecomposition(
        fr.ua, fr.ub, fr.va, fr.vb, InteractionVector(*fr.alpha), math.remainder(fr.phase, 2 * math.pi)
    )
    res = dec.residual(g)
    if res >= tol.reconstruction:
        raise ReconstructionFailure(f"reconstruction residual {res:.3e}")
    return dec


def canonicalize_capability(alpha) -> tuple[ChamberPoint, list[Symmetry]]:
    """Fold a raw interaction vector into pi/4 >= ax >= ay >= az >= 0.

    Components above pi/4 are reflected to pi/2 - alpha, then the vector is
    sorted descending. The returned symmetry list records every step in the
    order applied.
    """
    a = [float(v) for v in alpha]
    if len(a) != 3 or any(not (-_SNAP <= v < HALF_PI) for v in a):
        raise OutOfRange(f"raw interaction vector components must lie in [0, pi/2): {alpha}")
    steps: list[Symmetry] = []
    for j in range(3):
        a[j] = max(a[j], 0.0)
        if a[j] > QUARTER_PI:
            a[j] = HALF_PI - a[j]
            steps.append(Symmetry("reflect", j, j))
    for _ in range(3):
        for i in range(2):
            if a[i] < a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                steps.append(Symmetry("swap", i, i + 1))
    return ChamberPoint(*a), steps


def check_chamber(alpha, eps: float = 1e-12) -> ChamberPoint:
    """Validate the chamber ordering pi/4 >= ax >= ay >= az >= 0."""
    ax, ay, az = (float(v) for v in alpha)
    if not (QUARTER_PI + eps >= ax and ax + eps >= ay and ay + eps >= az and az >= -eps):
        raise NotCanonical(f"alpha {tuple(alpha)} is outside pi/4 >= ax >= ay >= az >= 0")
    return ChamberPoint(ax, ay, az)
