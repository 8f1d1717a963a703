"""Tolerance profile shared by every module.

The defaults can be overridden through the ``ENTCAP_TOLERANCES`` environment
variable, a comma separated list of ``field=value`` pairs, e.g.::

    ENTCAP_TOLERANCES="unitary=1e-8,reconstruction=1e-7"
"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_VAR = "ENTCAP_TOLERANCES"


@dataclass(frozen=True)
class Tolerances:
    unitary: float = 1e-9
    symmetric: float = 1e-9
    orthonormal: float = 1e-10
    normalized: float = 1e-9
    rank1: float = 1e-8
    rank: float = 1e-7
    degeneracy: float = 1e-8
    reconstruction: float = 1e-8
    product: float = 1e-8
    maximal: float = 1e-8
    phase_sum: float = 1e-8

    def replace(self, **changes: float) -> "Tolerances":
        return dataclasses.replace(self, **changes)


DEFAULT = Tolerances()


def parse_overrides(text: str) -> dict[str, float]:
    names = {f.name for f in dataclasses.fields(Tolerances)}
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"bad tolerance override {item!r}")
        out[key] = float(value)
    return out


def get_tolerances(tol: Tolerances | None = None) -> Tolerances:
    """Explicit profile if given, else the defaults with env overrides applied."""
    if tol is not None:
        return tol
    text = os.environ.get(ENV_VAR)
    if not text:
        return DEFAULT
    return DEFAULT.replace(**parse_overrides(text))
