import numpy as np
import pytest

from kreinval import (
    NullDegeneracy,
    NullVector,
    OrientationMismatch,
    PseudoOrthonormalFrame,
    Signature,
    classify,
    gram,
    pair,
    positive_cone_margin,
    projector,
    pseudo_orthonormalize,
    self_pairing,
    subspace_in_positive_cone,
)
from kreinval.geometry import NEGATIVE, NULL, POSITIVE

SEED = 98


def test_pairing_known_values():
    sig = Signature(2, 1)
    assert pair([1, 1, 1], [1, 0, 1], sig) == pytest.approx(0.0)
    assert self_pairing([1, 1, 1], sig) == pytest.approx(1.0)
    assert self_pairing([0, 0, 2], sig) == pytest.approx(-4.0)


def test_pairing_sesquilinear():
    sig = Signature(1, 1)
    rng = np.random.default_rng(SEED)
    z, w = (rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(2))
    a = 0.3 - 1.1j
    assert pair(a * z, w, sig) == pytest.approx(a * pair(z, w, sig))
    assert pair(z, a * w, sig) == pytest.approx(np.conj(a) * pair(z, w, sig))
    assert pair(w, z, sig) == pytest.approx(np.conj(pair(z, w, sig)))


def test_classify_all_three_classes():
    sig = Signature(1, 1)
    assert classify([1.0, 0.0], sig).cone_class == POSITIVE
    assert classify([0.0, 1.0], sig).cone_class == NEGATIVE
    assert classify([1.0, 1.0], sig).cone_class == NULL
    # the null band scales with the squared vector norm
    assert classify([1e8, 1e8 + 1e-6], sig).cone_class == NULL


def test_gram_known_value():
    sig = Signature(1, 1)
    basis = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    G = gram(basis, sig)
    assert np.allclose(G, np.array([[1.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(G, G.conj().T)


def test_orthonormalize_both_orientations():
    sig = Signature(2, 1)
    rng = np.random.default_rng(SEED + 1)
    pos_raw = np.vstack([np.eye(2), 0.2 * rng.standard_normal((1, 2))]).astype(complex)
    frame = pseudo_orthonormalize(pos_raw, sig, orientation="positive")
    assert np.allclose(gram(frame.vectors, sig), np.eye(2), atol=1e-10)
    neg_raw = np.array([[0.1], [0.2], [1.0]], dtype=complex)
    neg = pseudo_orthonormalize(neg_raw, sig, orientation="negative")
    assert np.allclose(gram(neg.vectors, sig), -np.eye(1), atol=1e-10)


def test_orthonormalize_rejects_wrong_orientation():
    sig = Signature(1, 1)
    timelike_down = np.array([[0.0], [1.0]], dtype=complex)
    with pytest.raises(OrientationMismatch):
        pseudo_orthonormalize(timelike_down, sig, orientation="positive")


def test_orthonormalize_rejects_null_pivot():
    sig = Signature(1, 1)
    lightlike = np.array([[1.0], [1.0]], dtype=complex)
    with pytest.raises(NullDegeneracy):
        pseudo_orthonormalize(lightlike, sig, orientation="positive")


def test_projector_boost_line():
    # one positive direction (cosh t, sinh t): P = x x^dagger in closed form
    sig = Signature(1, 1)
    t = 0.9
    x = np.array([[np.cosh(t)], [np.sinh(t)]], dtype=complex)
    frame = PseudoOrthonormalFrame(sig, x, "positive")
    P = projector(frame)
    ch, sh = np.cosh(t), np.sinh(t)
    expected = np.array([[ch * ch, -ch * sh], [sh * ch, -sh * sh]])
    assert np.allclose(P, expected)
    assert np.allclose(P @ P, P)
    assert np.allclose(P @ x, x)


def test_positive_cone_margin_is_basis_invariant():
    sig = Signature(2, 2)
    rng = np.random.default_rng(SEED + 2)
    basis = np.vstack([np.eye(2), 0.3 * rng.standard_normal((2, 2))]).astype(complex)
    m1 = positive_cone_margin(basis, sig)
    R = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    R += 5 * np.eye(2)  # keep it comfortably invertible
    m2 = positive_cone_margin(basis @ R, sig)
    assert m1 == pytest.approx(m2, abs=1e-10)
    assert -1.0 <= m1 <= 1.0


def test_subspace_positivity_decision():
    sig = Signature(2, 1)
    graph = np.array([[1.0, 0.0], [0.0, 1.0], [0.2, 0.1]], dtype=complex)
    assert subspace_in_positive_cone(graph, sig)
    mixed = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]], dtype=complex)
    assert not subspace_in_positive_cone(mixed, sig)


def test_null_vector_classify_raises_nothing_but_rayleigh_does():
    from kreinval import rayleigh
    from kreinval import PseudoHermitianMatrix

    sig = Signature(1, 1)
    A = PseudoHermitianMatrix(sig, np.diag([2.0, 1.0]).astype(complex))
    with pytest.raises(NullVector):
        rayleigh(A, [1.0, 1.0], sig)
