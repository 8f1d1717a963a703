"""Ancilla-assisted entanglement creation.

Alice holds qubits A, A' and Bob B, B'; the gate acts on A and B only. Inputs
are written in Schmidt form

    |phi>_AA' = ca |phi0>|0> + sa |phi0_perp>|1>
    |psi>_BB' = sb |psi0>|0> + cb |psi0_perp>|1>

(note that sb, not cb, multiplies the first term on Bob's side). With
computational Schmidt bases, (sa, sb) = (0, 0) is the product input |01>
and sa = sb = 1/sqrt(2) the local maximally entangled input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .canonical import build_ud
from .search import coordinate_ascent, top_k
from .states import Measure, PureState, apply_on_subsystems

_I2 = np.eye(2, dtype=complex)
_FLIP = np.array([[0, 1], [1, 0]], dtype=complex)


def bloch_basis(theta: float, phi: float) -> np.ndarray:
    """Columns (v, v_perp) with v on the Bloch sphere at (theta, phi)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[c, -s * e.conjugate()], [e * s, c]], dtype=complex)


@dataclass(frozen=True, eq=False)
class AncillaInput:
    sa: float
    sb: float
    basis_a: np.ndarray = _I2
    basis_b: np.ndarray = _I2

    @classmethod
    def from_angles(cls, sa, sb, theta_a=0.0, phi_a=0.0, theta_b=0.0, phi_b=0.0) -> "AncillaInput":
        return cls(float(sa), float(sb), bloch_basis(theta_a, phi_a), bloch_basis(theta_b, phi_b))

    @classmethod
    def local_product(cls) -> "AncillaInput":
        """|0>_A |1>_B with the ancillas in product, i.e. the |01> input."""
        return cls(0.0, 0.0)

    @classmethod
    def local_maximally_entangled(cls) -> "AncillaInput":
        s = 1.0 / math.sqrt(2.0)
        return cls(s, s)

    @property
    def ca(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.sa**2))

    @property
    def cb(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.sb**2))

    def phi(self) -> np.ndarray:
        b = self.basis_a
        return self.ca * np.kron(b[:, 0], [1, 0]) + self.sa * np.kron(b[:, 1], [0, 1])

    def psi(self) -> np.ndarray:
        b = self.basis_b
        return self.sb * np.kron(b[:, 0], [1, 0]) + self.cb * np.kron(b[:, 1], [0, 1])

    def state(self) -> PureState:
        """16 amplitudes ordered A, A', B, B'."""
        return PureState(np.kron(self.phi(), self.psi()), 4, 4)


def output_state(alpha, inp: AncillaInput) -> PureState:
    return apply_on_subsystems(build_ud(alpha), inp.state())


def output_measure(alpha, inp: AncillaInput, measure: Measure | str) -> float:
    m = Measure.parse(measure) if isinstance(measure, str) else measure
    return m(output_state(alpha, inp))


def example1_max_entropy(alpha: float) -> float:
    """Largest output entropy (bits) for U_d = exp(-i alpha XX)."""
    out = 0.0
    for p in (math.cos(alpha) ** 2, math.sin(alpha) ** 2):
        if p > 0:
            out -= p * math.log2(p)
    return out


def example2_renyi_me(alpha: float) -> float:
    """Output Renyi entanglement of U_d(alpha, alpha, alpha) on the local m.e. input."""
    c = math.cos(4 * alpha)
    return 3.0 / 16.0 * (3.0 - 2.0 * c - c * c)


def example2_renyi_pv(alpha: float) -> float:
    """Output Renyi entanglement of U_d(alpha, alpha, alpha) on the product input |01>."""
    c = math.cos(4 * alpha)
    return 0.5 * (1.0 - c * c)


def example2_crossover(check: bool = True) -> float:
    """alpha_0 = arccos(1/5)/4, where the two inputs tie.

    With ``check`` the value is confirmed as the only sign change of
    e_me - e_pv on (0, pi/4) and re-located by bisection to 1e-12.
    """
    a0 = math.acos(0.2) / 4.0
    if check:
        diff = lambda a: example2_renyi_me(a) - example2_renyi_pv(a)  # noqa: E731
        grid = np.linspace(1e-6, math.pi / 4, 2001)
        signs = np.sign([diff(a) for a in grid])
        changes = np.count_nonzero(signs[1:] != signs[:-1])
        root = bisect(diff, 1e-6, math.pi / 4, xtol=1e-12)
        if changes != 1 or abs(root - a0) > 1e-10:
            raise ArithmeticError(f"crossover check failed: {changes} sign changes, root {root!r}")
    return a0


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    e_me: float
    e_pv: float


def fig1_scan(alpha_max: float = math.pi / 4, steps: int = 101) -> list[ScanRow]:
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return [
        ScanRow(float(a), example2_renyi_me(a), example2_renyi_pv(a))
        for a in np.linspace(0.0, alpha_max, steps)
    ]


# --- optimizer ---------------------------------------------------------------

_PARAMS = ("ta", "tb", "theta_a", "phi_a", "theta_b", "phi_b")
MIN_BUDGET = 8


def _batch_states(x: np.ndarray) -> np.ndarray:
    """Input states for parameter rows (ta, tb, theta_a, phi_a, theta_b, phi_b); sa = sin(ta)."""
    ta, tb, tha, pha, thb, phb = x.T
    sa, ca = np.sin(ta), np.cos(ta)
    sb, cb = np.sin(tb), np.cos(tb)

    def basis(th, ph):
        c, s = np.cos(th / 2), np.sin(th / 2)
        e = np.exp(1j * ph)
        v = np.stack([c + 0j, e * s], axis=-1)
        vp = np.stack([-s * e.conj(), c + 0j], axis=-1)
        return v, vp

    v, vp = basis(tha, pha)
    phi = np.zeros((x.shape[0], 2, 2), dtype=complex)  # (A, A')
    phi[:, :, 0] = ca[:, None] * v
    phi[:, :, 1] = sa[:, None] * vp
    w, wp = basis(thb, phb)
    psi = np.zeros((x.shape[0], 2, 2), dtype=complex)  # (B, B')
    psi[:, :, 0] = sb[:, None] * w
    psi[:, :, 1] = cb[:, None] * wp
    return np.einsum("nab,ncd->nabcd", phi, psi)


def _batch_values(u4: np.ndarray, x: np.ndarray, measure: Measure) -> np.ndarray:
    st = _batch_states(np.atleast_2d(x))
    out = np.einsum("acxy,nxbyd->nabcd", u4, st).reshape(-1, 4, 4)
    s = np.linalg.svd(out, compute_uv=False)[:, ::-1]
    return measure.from_probabilities(s * s)


def _to_input(x) -> AncillaInput:
    ta, tb, tha, pha, thb, phb = (float(v) for v in x)
    return AncillaInput.from_angles(math.sin(ta), math.sin(tb), tha, pha, thb, phb)


@dataclass(frozen=True, eq=False)
class OptimizeResult:
    best: AncillaInput
    value: float
    params: tuple[float, ...]


def optimize_measure(
    alpha,
    measure: Measure | str,
    budget: int = MIN_BUDGET,
    fix_schmidt: tuple[float, float] | None = None,
    computational_bases: bool = False,
    n_starts: int = 4,
    rounds: int = 24,
) -> OptimizeResult:
    """Search ancilla-assisted inputs for the largest output entanglement.

    Stage one scans a grid with ``budget`` points per free parameter: Schmidt
    angles ta, tb in [0, pi/2] (sa = sin ta) and Bloch angles of the two
    Schmidt bases. Stage two refines the best ``n_starts`` grid points and the
    local-product / local-m.e. reference inputs by coordinate ascent.
    ``fix_schmidt`` pins (sa, sb); ``computational_bases`` drops the basis
    angles. The search is deterministic for fixed arguments.
    """
    m = Measure.parse(measure) if isinstance(measure, str) else measure
    if budget < MIN_BUDGET:
        raise ValueError(f"budget must be at least {MIN_BUDGET} points per parameter")
    u4 = build_ud(alpha).reshape(2, 2, 2, 2)

    free = [True] * 6
    fixed = np.zeros(6)
    if fix_schmidt is not None:
        free[0] = free[1] = False
        fixed[0], fixed[1] = (math.asin(min(1.0, max(0.0, s))) for s in fix_schmidt)
    if computational_bases:
        free[2:] = [False] * 4
    free_idx = [i for i in range(6) if free[i]]

    axes = {
        0: np.linspace(0.0, math.pi / 2, budget),
        1: np.linspace(0.0, math.pi / 2, budget),
        2: np.linspace(0.0, math.pi, budget),
        3: np.arange(budget) * (2 * math.pi / budget),
        4: np.linspace(0.0, math.pi, budget),
        5: np.arange(budget) * (2 * math.pi / budget),
    }
    steps = np.array(
        [math.pi / 2 / (budget - 1)] * 2 + [math.pi / (budget - 1), 2 * math.pi / budget] * 2
    )
    lo = np.array([0.0, 0.0, -np.inf, -np.inf, -np.inf, -np.inf])
    hi = np.array([math.pi / 2, math.pi / 2, np.inf, np.inf, np.inf, np.inf])

    def embed(rows: np.ndarray) -> np.ndarray:
        full = np.tile(fixed, (rows.shape[0], 1))
        full[:, free_idx] = rows
        return full

    starts = []
    if free_idx:
        mesh = np.meshgrid(*(axes[i] for i in free_idx), indexing="ij")
        grid = np.column_stack([g.ravel() for g in mesh])
        vals = np.concatenate(
            [_batch_values(u4, embed(grid[i : i + 32768]), m) for i in range(0, len(grid), 32768)]
        )
        starts = [embed(grid[i : i + 1])[0] for i in top_k(vals, n_starts)]
    refs = [fixed.copy()]
    if fix_schmidt is None:
        for t in ((0.0, 0.0), (math.pi / 4, math.pi / 4)):
            r = fixed.copy()
            r[0], r[1] = t
            refs.append(r)
    starts.extend(refs)

    def f_free(y):
        x = fixed.copy()
        x[free_idx] = y
        return float(_batch_values(u4, x, m)[0])

    best_x, best_v = None, -np.inf
    for x0 in starts:
        if free_idx:
            y, v = coordinate_ascent(
                f_free, x0[free_idx], steps[free_idx], rounds=rounds,
                lower=lo[free_idx], upper=hi[free_idx], min_step=1e-9,
            )
            x = fixed.copy()
            x[free_idx] = y
        else:
            x, v = x0, f_free(x0[free_idx])
        if v > best_v + 1e-15:
            best_x, best_v = x, v
    return OptimizeResult(_to_input(best_x), float(best_v), tuple(float(v) for v in best_x))
