"""Pure bipartite states and Schmidt-coefficient entanglement measures.

Schmidt coefficients are kept in INCREASING order everywhere, so
``monotone(s, n)`` sums the n *smallest* squared coefficients. Many libraries
sort the other way round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import DimensionMismatch, IndexOutOfRange, NotNormalized, UnknownMeasure
from .numerics import schmidt_svd


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    dim_a: int = 2
    dim_b: int = 2

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        object.__setattr__(self, "amplitudes", amps)
        if amps.size != self.dim_a * self.dim_b:
            raise DimensionMismatch(
                f"{amps.size} amplitudes do not fit a {self.dim_a}x{self.dim_b} bipartition"
            )
        if not np.all(np.isfinite(amps)):
            raise NotNormalized("non-finite amplitudes")

    @classmethod
    def normalized(cls, amplitudes, dim_a: int = 2, dim_b: int = 2) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(amps / np.linalg.norm(amps), dim_a, dim_b)

    @classmethod
    def product(cls, a, b) -> "PureState":
        a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
        return cls(np.kron(a, b), a.size, b.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def check(self, tol: Tolerances | None = None) -> "PureState":
        tol = get_tolerances(tol)
        if abs(self.norm - 1.0) > tol.normalized:
            raise NotNormalized(f"state norm {self.norm:.12g}")
        return self

    def schmidt(self, tol: Tolerances | None = None):
        return schmidt_svd(self.amplitudes, self.dim_a, self.dim_b, tol)

    def coefficients(self, tol: Tolerances | None = None) -> np.ndarray:
        return self.schmidt(tol)[0]

    def conj(self) -> "PureState":
        return PureState(self.amplitudes.conj(), self.dim_a, self.dim_b)


def as_state(s, dim_a: int = 2, dim_b: int | None = None) -> PureState:
    """Accept a PureState or a raw amplitude vector (square bipartition by default)."""
    if isinstance(s, PureState):
        return s
    amps = np.asarray(s, dtype=complex).ravel()
    if dim_b is None:
        d = math.isqrt(amps.size)
        if d * d != amps.size:
            raise DimensionMismatch(f"cannot infer a square bipartition for length {amps.size}")
        dim_a = dim_b = d
    return PureState(amps, dim_a, dim_b)


def _probs(s, tol) -> np.ndarray:
    c = as_state(s).coefficients(tol)
    return c * c


def entropy_of_entanglement(s, tol: Tolerances | None = None) -> float:
    """Von Neumann entropy of the reduced state, in bits."""
    p = _probs(s, tol)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def schmidt_number(s, rank_tol: float = 1e-7, tol: Tolerances | None = None) -> int:
    """Number of Schmidt coefficients above ``rank_tol``, minus one.

    Coefficients sitting right at ``rank_tol`` make this a discontinuous
    function of the state.
    """
    c = as_state(s).coefficients(tol)
    return int(np.count_nonzero(c > rank_tol)) - 1


def monotone(s, n: int, tol: Tolerances | None = None) -> float:
    s = as_state(s)
    m = min(s.dim_a, s.dim_b)
    if not 1 <= n <= m - 1:
        raise IndexOutOfRange(f"monotone index {n} outside 1..{m - 1}")
    return float(np.sum(_probs(s, tol)[:n]))


def renyi(s, tol: Tolerances | None = None) -> float:
    """2-Renyi entanglement 1 - tr(rho_A^2)."""
    p = _probs(s, tol)
    return float(1.0 - np.sum(p * p))


def concurrence_from_schmidt(s, tol: Tolerances | None = None) -> float:
    s = as_state(s)
    if (s.dim_a, s.dim_b) != (2, 2):
        raise DimensionMismatch("concurrence is defined here for two qubits only")
    c = s.coefficients(tol)
    return float(2.0 * c[0] * c[1])


@dataclass(frozen=True)
class Measure:
    """Which entanglement measure to evaluate.

    kind is one of ``entropy``, ``schmidt``, ``monotone``, ``renyi``,
    ``concurrence``; ``n`` is only used by ``monotone``.
    """

    kind: str
    n: int | None = None

    KINDS = ("entropy", "schmidt", "monotone", "renyi", "concurrence")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise UnknownMeasure(f"unknown measure {self.kind!r}")
        if self.kind == "monotone" and (self.n is None or self.n < 1):
            raise UnknownMeasure("monotone measure needs an index n >= 1")

    @classmethod
    def parse(cls, text: str) -> "Measure":
        text = text.strip().lower()
        if text.startswith("monotone"):
            _, _, idx = text.partition(":")
            try:
                return cls("monotone", int(idx))
            except ValueError:
                raise UnknownMeasure(f"bad monotone measure {text!r}") from None
        return cls(text)

    def __str__(self):
        return f"monotone:{self.n}" if self.kind == "monotone" else self.kind

    def maximum(self, m: int) -> float:
        """Value on a maximally entangled state of two m-level systems."""
        return {
            "entropy": math.log2(m),
            "schmidt": m - 1,
            "monotone": (self.n or 0) / m,
            "renyi": 1.0 - 1.0 / m,
            "concurrence": 1.0,
        }[self.kind]

    def __call__(self, s, tol: Tolerances | None = None) -> float:
        if self.kind == "entropy":
            return entropy_of_entanglement(s, tol)
        if self.kind == "schmidt":
            return float(schmidt_number(s, tol=tol))
        if self.kind == "monotone":
            return monotone(s, self.n, tol)
        if self.kind == "renyi":
            return renyi(s, tol)
        return concurrence_from_schmidt(s, tol)

    def from_probabilities(self, p: np.ndarray, rank_tol: float = 1e-7) -> np.ndarray:
        """Vectorized evaluation on squared Schmidt coefficients (last axis, increasing)."""
        p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        if self.kind == "entropy":
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
            return terms.sum(axis=-1)
        if self.kind == "schmidt":
            return np.count_nonzero(np.sqrt(p) > rank_tol, axis=-1) - 1.0
        if self.kind == "monotone":
            return p[..., : self.n].sum(axis=-1)
        if self.kind == "renyi":
            return 1.0 - (p * p).sum(axis=-1)
        if p.shape[-1] != 2:
            raise DimensionMismatch("concurrence is defined here for two qubits only")
        return 2.0 * np.sqrt(p[..., 0] * p[..., 1])


def apply_on_subsystems(gate, s, which: tuple[int, int] = (0, 2), tol: Tolerances | None = None) -> PureState:
    """Apply a two-qubit gate to two legs of a 4-qubit state.

    The 16 amplitudes are ordered A, A', B, B' (A most significant). ``which``
    names the legs the gate's first and second qubit act on; the default
    (0, 2) is U_AB (x) 1_A'B'. The result keeps the AA'|BB' bipartition.
    """
    s = as_state(s)
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (4, 4) or s.amplitudes.size != 16:
        raise DimensionMismatch("need a 4x4 gate and a 16-amplitude state")
    i, j = which
    if i == j or not (0 <= i < 4 and 0 <= j < 4):
        raise DimensionMismatch(f"invalid leg pair {which}")
    psi = s.amplitudes.reshape(2, 2, 2, 2)
    g = gate.reshape(2, 2, 2, 2)
    out = np.tensordot(g, psi, axes=([2, 3], [i, j]))
    # tensordot puts the gate outputs first; move them back to legs i, j
    out = np.moveaxis(out, [0, 1], [i, j])
    return PureState(out.reshape(16), 4, 4)
