"""The indefinite pairing, cone classification, Gram matrices, and frames.

The pairing is linear in its first argument and conjugate-linear in the
second: <z, w> = sum_{i<=p} z_i conj(w_i) - sum_{j>p} z_j conj(w_j).
Vectors split into positive, negative, and null cone classes by the sign of
their self-pairing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Signature, metric_diagonal
from .errors import (
    NullDegeneracy,
    OrientationMismatch,
    RankDeficiency,
    ShapeMismatch,
)

POSITIVE = "positive"
NEGATIVE = "negative"
NULL = "null"

#: null band half-width relative to the squared Euclidean norm
TOL_NULL_REL = 1e-9
#: acceptance on frame Gram deviation from +/- identity
TOL_FRAME = 1e-8
#: relative smallest-singular-value cutoff for basis independence
TOL_RANK = 1e-10


def _as_vector(z, n: int) -> np.ndarray:
    arr = np.asarray(z, dtype=complex).reshape(-1)
    if arr.size != n:
        raise ShapeMismatch(f"vector must have length {n}, got {arr.size}")
    return arr


def as_basis(vectors, n: int | None = None) -> np.ndarray:
    """Coerce input to an n x k array whose columns are the basis vectors.

    ndarrays are taken column-wise as given; python sequences are read as
    sequences of vectors and stacked into columns.
    """
    if isinstance(vectors, np.ndarray):
        arr = np.asarray(vectors, dtype=complex)
        if arr.ndim == 1:
            arr = arr[:, None]
    else:
        arr = np.column_stack([np.asarray(v, dtype=complex).reshape(-1) for v in vectors])
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise ShapeMismatch(f"basis must be a nonempty 2-d column stack, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ShapeMismatch(f"basis vectors must have length {n}, got {arr.shape[0]}")
    return arr


def pair(z, w, sig: Signature) -> complex:
    """Indefinite pairing <z, w>, linear in z and conjugate-linear in w."""
    zv = _as_vector(z, sig.n)
    wv = _as_vector(w, sig.n)
    jd = metric_diagonal(sig)
    return complex(np.sum(jd * zv * wv.conj()))


def self_pairing(z, sig: Signature) -> float:
    """<z, z>, which is exactly real; the imaginary residue is dropped."""
    return pair(z, w=z, sig=sig).real


@dataclass(frozen=True)
class ClassifiedVector:
    """A vector together with its self-pairing and cone class."""

    vector: np.ndarray
    self_pairing: float
    cone_class: str


def classify(z, sig: Signature, tol_null: float = TOL_NULL_REL) -> ClassifiedVector:
    """Assign the cone class by the sign of <z, z>.

    The null band is ``tol_null`` times the squared Euclidean norm, so the
    decision is scale-invariant.
    """
    zv = _as_vector(z, sig.n)
    s = self_pairing(zv, sig)
    band = tol_null * float(np.vdot(zv, zv).real)
    if s > band:
        cls = POSITIVE
    elif s < -band:
        cls = NEGATIVE
    else:
        cls = NULL
    return ClassifiedVector(vector=zv, self_pairing=s, cone_class=cls)


def gram(basis, sig: Signature) -> np.ndarray:
    """Pairing Gram matrix G with G[i, j] = <b_j, b_i>; Hermitian by construction."""
    B = as_basis(basis, sig.n)
    jd = metric_diagonal(sig)
    G = B.conj().T @ (jd[:, None] * B)
    return 0.5 * (G + G.conj().T)


@dataclass(frozen=True)
class PseudoOrthonormalFrame:
    """Columns with pairwise pairings equal to +I (positive) or -I (negative)."""

    signature: Signature
    vectors: np.ndarray
    orientation: str = POSITIVE
    tol: float = TOL_FRAME

    def __post_init__(self) -> None:
        if self.orientation not in (POSITIVE, NEGATIVE):
            raise ValueError(f"orientation must be positive or negative, got {self.orientation!r}")
        V = as_basis(self.vectors, self.signature.n)
        sign = 1.0 if self.orientation == POSITIVE else -1.0
        G = gram(V, self.signature)
        defect = float(np.max(np.abs(G - sign * np.eye(V.shape[1]))))
        if defect > self.tol:
            raise ValueError(f"frame Gram deviates from {sign:+.0f}I by {defect:.3e}")
        V = np.array(V)
        V.flags.writeable = False
        object.__setattr__(self, "vectors", V)

    @property
    def size(self) -> int:
        return self.vectors.shape[1]


def pseudo_orthonormalize(
    vectors,
    sig: Signature,
    orientation: str = POSITIVE,
    *,
    tol_null: float = TOL_NULL_REL,
    tol_frame: float = TOL_FRAME,
) -> PseudoOrthonormalFrame:
    """Gram-Schmidt for the indefinite pairing with a fixed sign of pivots.

    Each vector is cleaned against the accepted ones twice (a second pass is
    enough to repair cancellation), then its self-pairing is the pivot.  A
    pivot inside the null band raises NullDegeneracy; a pivot of the wrong
    sign raises OrientationMismatch.
    """
    if orientation not in (POSITIVE, NEGATIVE):
        raise ValueError(f"orientation must be positive or negative, got {orientation!r}")
    sign = 1.0 if orientation == POSITIVE else -1.0
    B = as_basis(vectors, sig.n)
    jd = metric_diagonal(sig)
    accepted: list[np.ndarray] = []
    for col in range(B.shape[1]):
        v = B[:, col].copy()
        for _ in range(2):
            for x in accepted:
                # component along x: <v, x> / <x, x> = sign * <v, x>
                coeff = np.sum(jd * v * x.conj())
                v = v - sign * coeff * x
        s = float(np.sum(jd * v * v.conj()).real)
        scale = float(np.vdot(v, v).real)
        if abs(s) <= tol_null * scale or scale == 0.0:
            raise NullDegeneracy(
                f"pivot {s:.3e} inside null band at column {col} (scale {scale:.3e})"
            )
        if sign * s < 0:
            raise OrientationMismatch(
                f"pivot {s:.3e} has the wrong sign for a {orientation} frame at column {col}"
            )
        accepted.append(v / np.sqrt(abs(s)))
    return PseudoOrthonormalFrame(sig, np.column_stack(accepted), orientation, tol=tol_frame)


def projector(frame: PseudoOrthonormalFrame) -> np.ndarray:
    """Pairing-orthogonal projector onto the frame span.

    For a positive frame this is X X-dagger with X-dagger = X* J; idempotent
    and equal to its own metric adjoint.
    """
    X = frame.vectors
    jd = metric_diagonal(frame.signature)
    sign = 1.0 if frame.orientation == POSITIVE else -1.0
    return sign * (X @ (X.conj().T * jd[None, :]))


def _orthonormal_columns(basis: np.ndarray, tol_rank: float) -> np.ndarray:
    """Euclidean-orthonormal basis of the column span; errors on rank deficiency."""
    u, s, _ = np.linalg.svd(basis, full_matrices=False)
    if s.size == 0 or s[-1] <= tol_rank * max(s[0], 1e-300):
        raise RankDeficiency(
            f"basis is numerically rank-deficient: singular values {s}"
        )
    return u[:, : basis.shape[1]]


def positive_cone_margin(basis, sig: Signature, *, tol_rank: float = TOL_RANK) -> float:
    """Smallest eigenvalue of the Gram of a Euclidean-orthonormalized basis.

    Orthonormalizing first makes the value depend only on the span, so it is
    invariant under invertible recombination of the basis columns; the margin
    lies in [-1, 1].
    """
    B = as_basis(basis, sig.n)
    Q = _orthonormal_columns(B, tol_rank)
    eigs = np.linalg.eigvalsh(gram(Q, sig))
    return float(eigs[0])


def subspace_in_positive_cone(basis, sig: Signature, tol: float = 1e-9) -> bool:
    """True when every nonzero vector of the span has positive self-pairing.

    Decided by the span-normalized Gram margin, so any basis of the same
    subspace gives the same answer.
    """
    return positive_cone_margin(basis, sig) >= tol
