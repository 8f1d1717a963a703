import math

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
angles = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


@st.composite
def chamber_points(draw):
    """Points with pi/4 >= ax >= ay >= az >= 0."""
    raw = [draw(st.floats(0.0, math.pi / 4)) for _ in range(3)]
    return tuple(sorted(raw, reverse=True))


@st.composite
def raw_alphas(draw):
    return tuple(draw(st.floats(0.0, math.pi / 2, exclude_max=True)) for _ in range(3))


def random_state(rng, dim=4):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_chamber(rng):
    return tuple(sorted(rng.uniform(0.0, math.pi / 4, 3), reverse=True))
