"""Derivative-free maximization helpers: grid argmax and coordinate descent."""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


def coordinate_ascent(
    f: Callable[[np.ndarray], float],
    x0: Sequence[float],
    step: float | Sequence[float],
    rounds: int = 3,
    lower: Sequence[float] | None = None,
    upper: Sequence[float] | None = None,
    min_step: float = 0.0,
    min_gain: float = 1e-14,
    max_moves: int = 256,
):
    """Maximize ``f`` by axis-aligned moves, halving the step after each round.

    Within a round every coordinate is pushed in whichever direction improves
    ``f`` by more than ``min_gain`` (at most ``max_moves`` times), so rounding
    noise on flat stretches cannot keep it walking. Moves are clipped to the
    box. Returns (x, f(x)).
    """
    x = np.array(x0, dtype=float)
    steps = np.broadcast_to(np.asarray(step, dtype=float), x.shape).copy()
    lo = None if lower is None else np.asarray(lower, dtype=float)
    hi = None if upper is None else np.asarray(upper, dtype=float)
    best = f(x)
    for _ in range(rounds):
        for i in range(x.size):
            for direction in (1.0, -1.0):
                for _ in range(max_moves):
                    trial = x.copy()
                    trial[i] += direction * steps[i]
                    if lo is not None:
                        trial[i] = max(trial[i], lo[i])
                    if hi is not None:
                        trial[i] = min(trial[i], hi[i])
                    if trial[i] == x[i]:
                        break
                    val = f(trial)
                    if val > best + min_gain:
                        x, best = trial, val
                    else:
                        break
        steps *= 0.5
        if np.all(steps < min_step):
            break
    return x, best


def top_k(values: np.ndarray, k: int) -> np.ndarray:
    """Flat indices of the k largest values, ties resolved by lowest index."""
    flat = np.asarray(values).ravel()
    k = min(k, flat.size)
    # stable sort on the negated values keeps first occurrences first
    return np.argsort(-flat, kind="stable")[:k]
