"""Maximal concurrence a two-qubit gate creates from product inputs.

Closed form: 1 inside the perfect-entangler region, otherwise the largest
|sin(lambda_k - lambda_l)|. ``brute_force_max_concurrence`` is an independent
grid-plus-refinement oracle that only uses the gate matrix and the
sigma_y (x) sigma_y form of the concurrence.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .canonical import (
    QUARTER_PI,
    CanonicalDecomposition,
    ChamberPoint,
    Symmetry,
    build_ud,
    canonicalize_capability,
    check_chamber,
    decompose,
    lambdas_from_alphas,
    swap_local,
)
from .config import Tolerances, get_tolerances
from .errors import DegenerateSystem, NotPerfectEntangler, NumericalFailure
from .magic import PAULIS, SYY, concurrence, from_magic, magic_state
from .numerics import check_unitary, factor_rank1
from .search import coordinate_ascent
from .states import PureState

_EDGE = 1e-12


@dataclass(frozen=True, eq=False)
class MuSolution:
    """Output (mu) and input (w) magic-basis coefficients, w_k = mu_k e^{i lambda_k}."""

    mu: np.ndarray
    w: np.ndarray


@dataclass(frozen=True, eq=False)
class CapabilityReport:
    c_max: float
    perfect_entangler: bool
    best_input: tuple[np.ndarray, np.ndarray]
    output_state: PureState
    alpha: ChamberPoint
    achieving_pair: tuple[int, int] | None = None
    decomposition: CanonicalDecomposition | None = None
    symmetries: list[Symmetry] = field(default_factory=list)

    @property
    def input_state(self) -> PureState:
        return PureState.product(*self.best_input)


def is_perfect_entangler(alpha) -> bool:
    ax, ay, az = check_chamber(alpha)
    return (ax + ay >= QUARTER_PI - _EDGE) and (ay + az <= QUARTER_PI + _EDGE)


def _best_pair(alpha) -> tuple[tuple[int, int], float]:
    lam = lambdas_from_alphas(alpha)
    best, pair = -1.0, (1, 2)
    for k, l in itertools.combinations(range(4), 2):
        v = abs(math.sin(lam[k] - lam[l]))
        if v > best + 1e-15:
            best, pair = v, (k + 1, l + 1)
    return pair, best


def max_concurrence(alpha) -> float:
    if is_perfect_entangler(alpha):
        return 1.0
    return _best_pair(alpha)[1]


def solve_mu_perfect(alpha) -> MuSolution:
    """Magic coefficients of a maximally entangled output reachable from a product input.

    Gauge mu_1 = 0 with real nonnegative mu. The squared magnitudes solve
        sin(a3)|mu2|^2 + sin(a1)|mu4|^2 = 0
        |mu3|^2 + cos(a3)|mu2|^2 + cos(a1)|mu4|^2 = 0
        |mu2|^2 + |mu3|^2 + |mu4|^2 = 1
    with a1 = 4(ax+ay), a3 = 4(ay+az). Where the system is singular
    (sin a1 = 0 or sin a3 = 0) the boundary solutions are assigned explicitly.
    """
    if not is_perfect_entangler(alpha):
        raise NotPerfectEntangler(f"alpha {tuple(alpha)} is not a perfect entangler")
    ax, ay, az = (float(v) for v in alpha)
    a1, a3 = 4.0 * (ax + ay), 4.0 * (ay + az)
    s1, c1 = math.sin(a1), math.cos(a1)
    s3, c3 = math.sin(a3), math.cos(a3)
    edge1 = abs(s1) < 1e-12
    edge3 = abs(s3) < 1e-12
    if edge1 and edge3:
        # a1 = pi and a3 in {0, pi}, or a1 = 2pi and a3 = pi
        if c1 < 0 and c3 > 0:
            m2, m3, m4 = 0.5, 0.0, 0.5
        elif c1 < 0:
            m2, m3, m4 = 0.0, 0.5, 0.5
        else:
            m2, m3, m4 = 0.5, 0.0, 0.5
    elif edge1:
        # mu2 = 0, then |mu3|^2 = -cos(a1)|mu4|^2
        m2 = 0.0
        m4 = 1.0 / (1.0 - c1)
        m3 = 1.0 - m4
    elif edge3:
        m4 = 0.0
        m2 = 1.0 / (1.0 - c3)
        m3 = 1.0 - m2
    else:
        mat = np.array([[s3, 0.0, s1], [c3, 1.0, c1], [1.0, 1.0, 1.0]])
        det = np.linalg.det(mat)
        if abs(det) < 1e-14:
            raise DegenerateSystem(f"singular mu system for alpha {tuple(alpha)}")
        m2, m3, m4 = np.linalg.solve(mat, [0.0, 0.0, 1.0])
    mags = np.array([0.0, m2, m3, m4])
    if mags.min() < -1e-9:
        raise DegenerateSystem(f"negative weight in mu solution {mags}")
    mu = np.sqrt(np.clip(mags, 0.0, None)).astype(complex)
    mu /= np.linalg.norm(mu)
    w = mu * np.exp(1j * lambdas_from_alphas(alpha))
    return MuSolution(mu, w)


def best_input(alpha, tol: Tolerances | None = None) -> CapabilityReport:
    """Product input maximizing the output concurrence of U_d(alpha), alpha in the chamber."""
    tol = get_tolerances(tol)
    point = check_chamber(alpha)
    pe = is_perfect_entangler(point)
    pair = None
    if pe:
        vec = from_magic(solve_mu_perfect(point).w).amplitudes
        c_max = 1.0
    else:
        pair, c_max = _best_pair(point)
        k, l = pair
        vec = (magic_state(k) + 1j * magic_state(l)) / math.sqrt(2.0)
    a, b = factor_rank1(vec, 2, 2, tol)
    out = PureState(build_ud(point) @ np.kron(a, b))
    c = concurrence(out)
    if abs(c - c_max) > 1e-9:
        raise NumericalFailure(f"best input reaches {c!r}, expected {c_max!r}")
    return CapabilityReport(c_max, pe, (a, b), out, point, pair)


def bloch(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def _gate_for(alpha_or_gate) -> np.ndarray:
    arr = np.asarray(alpha_or_gate)
    if arr.shape == (3,):
        return build_ud(arr.astype(float))
    return check_unitary(arr)


def brute_force_max_concurrence(alpha_or_gate, n_grid: int = 48, rounds: int = 3, chunk: int = 512):
    """Grid search over product inputs plus coordinate-descent refinement.

    Accepts an interaction vector or a 4x4 gate. The concurrence of
    U(a (x) b) is the bilinear form |(a(x)b)^T G (a(x)b)| with
    G = U^T (sigma_y (x) sigma_y) U, evaluated for all grid pairs at once.
    Returns (value, (theta_a, phi_a, theta_b, phi_b)).
    """
    if n_grid < 24:
        raise ValueError("n_grid must be at least 24")
    u = _gate_for(alpha_or_gate)
    g = u.T @ SYY @ u
    t = g.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    thetas = np.linspace(0.0, math.pi, n_grid)
    phis = np.arange(n_grid) * (2.0 * math.pi / n_grid)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    vecs = bloch(th.ravel(), ph.ravel())
    sq = np.einsum("ni,nj->nij", vecs, vecs).reshape(-1, 4)
    right = t @ sq.T
    best, best_idx = -1.0, (0, 0)
    for start in range(0, sq.shape[0], chunk):
        vals = np.abs(sq[start : start + chunk] @ right)
        idx = int(np.argmax(vals))
        v = float(vals.flat[idx])
        if v > best:
            best = v
            best_idx = (start + idx // vals.shape[1], idx % vals.shape[1])
    ia, ib = best_idx
    x0 = [th.ravel()[ia], ph.ravel()[ia], th.ravel()[ib], ph.ravel()[ib]]

    def conc(x):
        psi = u @ np.kron(bloch(x[0], x[1]), bloch(x[2], x[3]))
        return float(abs(psi @ SYY @ psi))

    dth, dph = math.pi / (n_grid - 1), 2.0 * math.pi / n_grid
    x, val = coordinate_ascent(conc, x0, [dth, dph, dth, dph], rounds=rounds)
    return max(val, best), tuple(float(v) for v in x)


def _map_back(vec: np.ndarray, steps: list[Symmetry]) -> np.ndarray:
    """Carry a best input for the chamber point back to the raw interaction vector."""
    a, b = factor_rank1(vec, 2, 2)
    for step in reversed(steps):
        if step.kind == "swap":
            c = swap_local(step.i, step.j).conj().T
            a, b = c @ a, c @ b
        else:
            # U_d(a) = -i (1 (x) s_j) U_d(a')^* (s_j (x) 1): E(U_d psi) = E(U_d(a') conj(s_j^A psi))
            a, b = PAULIS[step.i] @ a.conj(), b.conj()
    return np.kron(a, b)


def capability_of_gate(gate, tol: Tolerances | None = None, refine_grid: int = 24) -> CapabilityReport:
    """Decompose, fold into the chamber, and report the best product input for ``gate`` itself."""
    tol = get_tolerances(tol)
    g = check_unitary(gate, tol, "gate")
    dec = decompose(g, tol)
    point, steps = canonicalize_capability(dec.alpha)
    rep = best_input(point, tol)
    raw_in = _map_back(np.kron(*rep.best_input), steps)
    vec = np.kron(dec.va, dec.vb).conj().T @ raw_in
    a, b = factor_rank1(vec, 2, 2, tol)
    out = PureState(g @ np.kron(a, b))
    if abs(concurrence(out) - rep.c_max) > tol.reconstruction:
        # fall back to a direct search on the gate itself
        _, x = brute_force_max_concurrence(g, refine_grid, rounds=30)
        a, b = bloch(x[0], x[1]), bloch(x[2], x[3])
        out = PureState(g @ np.kron(a, b))
        if abs(concurrence(out) - rep.c_max) > tol.reconstruction:
            raise NumericalFailure("could not map the best input back to the gate")
    return CapabilityReport(
        rep.c_max, rep.perfect_entangler, (a, b), out, point, rep.achieving_pair, dec, steps
    )
