"""Magic basis, concurrence and the product / maximal-entanglement criteria.

Computational ordering is |00>, |01>, |10>, |11>. The columns of ``Q`` are the
magic basis states; every phase convention downstream follows this matrix.
Complex conjugation always means entrywise conjugation of computational
amplitudes.
"""
from __future__ import annotations

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import DimensionMismatch, NotNormalized, NumericalFailure
from .states import PureState

_S = 1.0 / np.sqrt(2.0)

Q = _S * np.array(
    [
        [1, -1j, 0, 0],
        [0, 0, 1, -1j],
        [0, 0, -1, -1j],
        [1, 1j, 0, 0],
    ],
    dtype=complex,
)
QH = Q.conj().T

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
SYY = np.kron(SIGMA_Y, SIGMA_Y)

BELL = {
    "phi+": _S * np.array([1, 0, 0, 1], dtype=complex),
    "phi-": _S * np.array([1, 0, 0, -1], dtype=complex),
    "psi+": _S * np.array([0, 1, 1, 0], dtype=complex),
    "psi-": _S * np.array([0, 1, -1, 0], dtype=complex),
}


def magic_state(k: int) -> np.ndarray:
    """Magic basis state k (1-based, as in the usual labelling)."""
    return Q[:, k - 1].copy()


def _two_qubit(s) -> np.ndarray:
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s, dtype=complex).ravel()
    if amps.size != 4:
        raise DimensionMismatch(f"expected a two-qubit state, got {amps.size} amplitudes")
    return amps


def _normalized(amps, tol) -> np.ndarray:
    tol = get_tolerances(tol)
    n = np.linalg.norm(amps)
    if abs(n - 1.0) > tol.normalized:
        raise NotNormalized(f"state norm {n:.12g}")
    return amps


def to_magic(s, tol: Tolerances | None = None) -> np.ndarray:
    """Magic-basis coefficients mu_1..mu_4 of a normalized two-qubit state."""
    return QH @ _normalized(_two_qubit(s), tol)


def from_magic(mu, tol: Tolerances | None = None) -> PureState:
    mu = np.asarray(mu, dtype=complex).ravel()
    if mu.size != 4:
        raise DimensionMismatch(f"expected 4 magic coefficients, got {mu.size}")
    return PureState(Q @ _normalized(mu, tol))


def concurrence_direct(s, tol: Tolerances | None = None) -> float:
    """|<psi| sigma_y (x) sigma_y |psi*>| in the computational basis."""
    v = _normalized(_two_qubit(s), tol)
    return float(abs(v.conj() @ SYY @ v.conj()))


def concurrence_magic(s, tol: Tolerances | None = None) -> float:
    """|sum_k mu_k^2| from the magic-basis coefficients."""
    mu = to_magic(s, tol)
    return float(abs(np.sum(mu * mu)))


def concurrence(s, tol: Tolerances | None = None) -> float:
    a = concurrence_direct(s, tol)
    b = concurrence_magic(s, tol)
    if abs(a - b) > 1e-12:
        raise NumericalFailure(f"concurrence routes disagree: {a!r} vs {b!r}")
    return b


def is_product(s, tol: Tolerances | None = None) -> bool:
    return concurrence(s, tol) < get_tolerances(tol).product


def is_maximally_entangled(s, tol: Tolerances | None = None) -> bool:
    return concurrence(s, tol) > 1.0 - get_tolerances(tol).maximal


def real_in_magic(s, tol: Tolerances | None = None):
    """Strip the global phase of a maximally entangled state.

    Returns (phase, state) with ``s = exp(i phase) * state`` and ``state`` real
    in the magic basis; the sign is fixed by making its largest magic
    coefficient positive.
    """
    mu = to_magic(s, tol)
    phase = 0.5 * np.angle(np.sum(mu * mu))
    bar = mu * np.exp(-1j * phase)
    k = int(np.argmax(np.abs(bar)))
    if bar[k].real < 0:
        bar = -bar
        phase += np.pi
    return float(phase), Q @ bar

