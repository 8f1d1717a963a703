import math

import numpy as np
import pytest
from hypothesis import given

from conftest import raw_alphas, seeds
from entcap.canonical import (
    HALF_PI,
    QUARTER_PI,
    alphas_from_lambdas,
    build_ud,
    canonicalize_capability,
    check_chamber,
    decompose,
    lambdas_from_alphas,
    local_equivalents_from_me_basis,
    swap_local,
)
from entcap.capability import brute_force_max_concurrence, max_concurrence
from entcap.errors import (
    InconsistentPhases,
    NotCanonical,
    NotMaximallyEntangled,
    NotOrthogonal,
    NotUnitary,
    OutOfRange,
)
from entcap.magic import PAULIS, QH, SIGMA_X, Q, concurrence
from entcap.numerics import eig_symmetric_unitary, random_unitary

P = math.pi
SWAP = np.eye(4)[[0, 2, 1, 3]]
CNOT = np.eye(4)[[0, 1, 3, 2]]


def test_lambda_examples():
    assert np.allclose(lambdas_from_alphas((0, 0, 0)), 0)
    assert np.allclose(lambdas_from_alphas((P / 4, 0, 0)), [P / 4, -P / 4, -P / 4, P / 4])
    assert np.allclose(lambdas_from_alphas((P / 4,) * 3), [P / 4, P / 4, -3 * P / 4, P / 4])


def test_alpha_examples():
    assert np.allclose(alphas_from_lambdas([0, 0, 0, 0]), 0)
    assert np.allclose(alphas_from_lambdas([P / 4, -P / 4, -P / 4, P / 4]), (P / 4, 0, 0))
    assert np.allclose(alphas_from_lambdas([P / 4, P / 4, -3 * P / 4, P / 4]), (P / 4,) * 3)
    with pytest.raises(InconsistentPhases):
        alphas_from_lambdas([0.1, 0, 0, 0])


@given(raw_alphas())
def test_lambda_round_trip(alpha):
    lam = lambdas_from_alphas(alpha)
    assert abs(np.sum(lam)) < 1e-12
    back = alphas_from_lambdas(lam)
    assert np.allclose(np.exp(-4j * np.array(back)), np.exp(-4j * np.array(alpha)))


@given(raw_alphas())
def test_build_ud_matches_exponential(alpha):
    from scipy.linalg import expm

    h = sum(a * np.kron(s, s) for a, s in zip(alpha, PAULIS))
    assert np.abs(build_ud(alpha) - expm(-1j * h)).max() < 1e-12
    for s in PAULIS:
        ss = np.kron(s, s)
        assert np.abs(ss @ build_ud(alpha) - build_ud(alpha) @ ss).max() < 1e-12


def test_build_ud_examples():
    assert np.allclose(build_ud((0, 0, 0)), np.eye(4))
    assert np.allclose(build_ud((P / 4,) * 3), np.exp(-1j * P / 4) * SWAP)
    a = 0.37
    assert np.allclose(build_ud((a, 0, 0)), math.cos(a) * np.eye(4) - 1j * math.sin(a) * np.kron(SIGMA_X, SIGMA_X))


def test_local_equivalents_fixed_point():
    ua, ub, z = local_equivalents_from_me_basis(Q)
    assert np.allclose(ua, np.eye(2)) and np.allclose(ub, np.eye(2))
    assert np.allclose(z, 0)


def test_local_equivalents_swapped_rephased():
    basis = Q[:, [0, 1, 3, 2]] * np.exp(1j * np.array([0.3, -1.1, 2.0, 0.7]))
    ua, ub, z = local_equivalents_from_me_basis(basis)
    assert np.abs(np.kron(ua, ub) @ basis * np.exp(1j * z) - Q).max() < 1e-8


def _pauli_index(m):
    """Which of I, X, Y, Z the 2x2 matrix is proportional to, else None."""
    for k, p in enumerate((np.eye(2),) + PAULIS):
        c = np.trace(p.conj().T @ m) / 2
        if abs(abs(c) - 1) < 1e-8 and np.allclose(m, c * p, atol=1e-8):
            return k
    return None


@given(seeds)
def test_local_equivalents_recover_locals(seed):
    u, v = random_unitary(2, seed), random_unitary(2, seed + 1)
    ua, ub, z = local_equivalents_from_me_basis(np.kron(u, v) @ Q)
    # u^dag and v^dag come back up to phases and a common sigma_j (x) sigma_j
    ka, kb = _pauli_index(ua @ u), _pauli_index(ub @ v)
    assert ka is not None and ka == kb


def test_local_equivalents_guards():
    with pytest.raises(NotMaximallyEntangled):
        local_equivalents_from_me_basis(np.eye(4))
    bad = Q.copy()
    bad[:, 3] = Q[:, 0]
    with pytest.raises(NotOrthogonal):
        local_equivalents_from_me_basis(bad)


def _check(dec, g):
    assert dec.residual(g) < 1e-8
    a = dec.alpha
    assert HALF_PI > a[0] >= a[1] >= a[2] >= 0
    for m in (dec.ua, dec.ub, dec.va, dec.vb):
        assert abs(np.linalg.det(m) - 1) < 1e-10


@given(seeds)
def test_decompose_random(seed):
    g = random_unitary(4, seed)
    _check(decompose(g), g)


def test_decompose_named_gates():
    d = decompose(np.eye(4))
    assert np.allclose(d.alpha, 0, atol=1e-9)
    d = decompose(SWAP)
    assert np.allclose(d.alpha, (P / 4,) * 3, atol=1e-9)
    _check(d, SWAP)
    d = decompose(CNOT)
    assert np.allclose(d.alpha, (P / 4, 0, 0), atol=1e-9)
    _check(d, CNOT)


@given(seeds)
def test_decompose_local_gate(seed):
    g = np.kron(random_unitary(2, seed), random_unitary(2, seed + 7))
    d = decompose(g)
    assert np.allclose(d.alpha, 0, atol=1e-9)
    _check(d, g)


@given(seeds)
def test_local_invariance_of_alpha(seed):
    rng = np.random.default_rng(seed)
    g = random_unitary(4, rng)
    l1 = np.kron(random_unitary(2, rng), random_unitary(2, rng))
    l2 = np.kron(random_unitary(2, rng), random_unitary(2, rng))
    assert np.allclose(decompose(g).alpha, decompose(l1 @ g @ l2).alpha, atol=1e-9)


@given(raw_alphas())
def test_decompose_recovers_canonical_gate_class(alpha):
    g = build_ud(alpha)
    d = decompose(g)
    _check(d, g)
    # same local class: equal capability after folding
    assert max_concurrence(canonicalize_capability(d.alpha)[0]) == pytest.approx(
        max_concurrence(canonicalize_capability(alpha)[0]), abs=1e-9
    )


def test_decompose_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        decompose(np.ones((4, 4)))


@given(seeds)
def test_eigenbasis_and_image_are_maximally_entangled(seed):
    g = random_unitary(4, seed)
    gm = QH @ g @ Q
    es = eig_symmetric_unitary(gm.T @ gm)
    for k in range(4):
        psi = Q @ es.vectors[:, k]
        tilde = np.exp(-0.5j * es.phases[k]) * g @ psi
        assert concurrence(psi) > 1 - 1e-8
        assert concurrence(tilde) > 1 - 1e-8
    # the images are orthonormal as well
    tildes = np.column_stack([np.exp(-0.5j * es.phases[k]) * g @ Q @ es.vectors[:, k] for k in range(4)])
    assert np.allclose(tildes.conj().T @ tildes, np.eye(4), atol=1e-10)


def test_swap_local_exchanges_axes():
    a = np.array([0.5, 0.3, 0.1])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        c = np.kron(swap_local(i, j), swap_local(i, j))
        b = a.copy()
        b[[i, j]] = b[[j, i]]
        assert np.allclose(c @ build_ud(a) @ c.conj().T, build_ud(b))


def test_canonicalize_examples():
    pt, steps = canonicalize_capability((P / 4,) * 3)
    assert np.allclose(pt, (P / 4,) * 3) and steps == []
    pt, steps = canonicalize_capability((3 * P / 8, 0, 0))
    assert np.allclose(pt, (P / 8, 0, 0))
    assert [s.kind for s in steps] == ["reflect"]
    pt, steps = canonicalize_capability((0.1, 0.3, 0.2))
    assert np.allclose(pt, (0.3, 0.2, 0.1))
    assert all(s.kind == "swap" for s in steps)
    with pytest.raises(OutOfRange):
        canonicalize_capability((P / 2, 0, 0))


def test_reflection_preserves_capability_by_oracle():
    assert brute_force_max_concurrence((3 * P / 8, 0, 0))[0] == pytest.approx(
        brute_force_max_concurrence((P / 8, 0, 0))[0], abs=1e-3
    )


@given(raw_alphas())
def test_canonicalized_point_is_in_chamber(alpha):
    pt, _ = canonicalize_capability(alpha)
    assert QUARTER_PI + 1e-12 >= pt[0] >= pt[1] >= pt[2] >= 0
    check_chamber(pt)


def test_check_chamber_rejects():
    with pytest.raises(NotCanonical):
        check_chamber((0.1, 0.2, 0.0))
    with pytest.raises(NotCanonical):
        check_chamber((1.0, 0.0, 0.0))
