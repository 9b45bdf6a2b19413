"""Seeded generation of admissible instances and cone geometry.

All samplers draw from an explicit numpy Generator, so identical seeds give
bit-identical output.  Pseudo-unitaries come from exponentiating elements of
the isometry Lie algebra (B J + J B* = 0): skew-Hermitian diagonal blocks and
a free off-diagonal coupling block whose spectral norm is capped by
``boost_scale``.  Positive subspaces are graphs (Q; K Q) of contractions K
over isometries Q, which reach every positive subspace of the given dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    AdmissibleSpectrum,
    PseudoHermitianMatrix,
    PseudoUnitary,
    Signature,
    canonical_diagonal,
    check_index_tuple,
    matrix_dagger,
    validate_pseudo_unitary,
)
from .errors import NullDegeneracy, RetriesExhausted, ShapeMismatch
from .geometry import POSITIVE, PseudoOrthonormalFrame, metric_diagonal, subspace_in_positive_cone

#: tolerance used to self-check sampled pseudo-unitaries
SAMPLE_UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class SamplerConfig:
    """Knobs for instance generation.

    seed            base seed for derived per-instance streams
    gap_min         enforced lower bound on lambdas[0] - mus[0]
    value_range     uniform range eigenvalues are drawn from
    boost_scale     cap on the off-diagonal Lie-algebra block norm
    cond_cap        resample until cond(U) stays below this
    contraction_cap cap on ||K||_2 in graph subspaces
    max_retries     bounded-retry budget before RetriesExhausted
    """

    seed: int = 0
    gap_min: float = 0.5
    value_range: tuple[float, float] = (-2.0, 2.0)
    boost_scale: float = 1.0
    cond_cap: float = 1e4
    contraction_cap: float = 0.9
    max_retries: int = 64

    def __post_init__(self) -> None:
        lo, hi = self.value_range
        if not lo < hi:
            raise ValueError(f"value_range must be increasing, got {self.value_range}")
        if self.gap_min <= 0:
            raise ValueError("gap_min must be positive")
        if self.cond_cap <= 1:
            raise ValueError("cond_cap must exceed 1")
        if self.boost_scale < 0:
            raise ValueError("boost_scale must be >= 0")
        if not 0 < self.contraction_cap < 1:
            raise ValueError("contraction_cap must lie in (0, 1)")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


def instance_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent stream for one instance, derived from (seed, index)."""
    ss = np.random.SeedSequence(entropy=int(seed) % 2**64, spawn_key=(int(index),))
    return np.random.default_rng(ss)


def complex_normal(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    """Standard complex Gaussian array (variance 1 per complex entry)."""
    shape = (rows,) if cols is None else (rows, cols)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def sample_spectrum(sig: Signature, cfg: SamplerConfig, rng: np.random.Generator) -> AdmissibleSpectrum:
    """Uniform eigenvalue draws with the gap enforced by shifting the positive block."""
    lo, hi = cfg.value_range
    lam = np.sort(rng.uniform(lo, hi, sig.p))
    mu = np.sort(rng.uniform(lo, hi, sig.q))[::-1]
    if sig.p and sig.q:
        gap = lam[0] - mu[0]
        if gap < cfg.gap_min:
            lam = lam + (cfg.gap_min - gap)
    return AdmissibleSpectrum(sig, lam, mu)


def _lie_algebra_element(sig: Signature, cfg: SamplerConfig, rng: np.random.Generator) -> np.ndarray:
    """Random generator with skew-Hermitian diagonal blocks and capped coupling."""
    p, q = sig.p, sig.q
    gen = np.zeros((sig.n, sig.n), dtype=complex)
    if p:
        G1 = complex_normal(rng, p, p)
        gen[:p, :p] = 0.5 * (G1 - G1.conj().T)
    if q:
        G2 = complex_normal(rng, q, q)
        gen[p:, p:] = 0.5 * (G2 - G2.conj().T)
    if p and q and cfg.boost_scale > 0:
        Z = complex_normal(rng, p, q)
        t = rng.uniform(0.0, cfg.boost_scale)
        zn = np.linalg.norm(Z, 2)
        if zn > 0:
            Z = Z * (t / zn)
        gen[:p, p:] = Z
        gen[p:, :p] = Z.conj().T
    return gen


def sample_pseudo_unitary(sig: Signature, cfg: SamplerConfig, rng: np.random.Generator) -> PseudoUnitary:
    """Exponential of a random Lie-algebra element, resampled until well conditioned."""
    for _ in range(cfg.max_retries):
        gen = _lie_algebra_element(sig, cfg, rng)
        U = scipy.linalg.expm(gen)
        if np.linalg.cond(U, 2) > cfg.cond_cap:
            continue
        if not validate_pseudo_unitary(U, sig, SAMPLE_UNITARY_TOL):
            continue
        return PseudoUnitary(sig, U, tol=SAMPLE_UNITARY_TOL)
    raise RetriesExhausted(
        f"no pseudo-unitary with cond <= {cfg.cond_cap:.1e} in {cfg.max_retries} draws"
    )


def sample_planted(
    sig: Signature, cfg: SamplerConfig, rng: np.random.Generator
) -> tuple[PseudoHermitianMatrix, AdmissibleSpectrum, PseudoUnitary]:
    """Planted-spectrum instance A = U diag U^-1, returning the conjugator too.

    Using the dagger as the inverse keeps the construction exactly
    pseudo-Hermitian in exact arithmetic, independent of expm accuracy; the
    final symmetrization removes roundoff asymmetry.
    """
    spectrum = sample_spectrum(sig, cfg, rng)
    U = sample_pseudo_unitary(sig, cfg, rng)
    Lam = canonical_diagonal(spectrum)
    raw = U.entries @ Lam.entries @ U.inverse
    sym = 0.5 * (raw + matrix_dagger(raw, sig))
    return PseudoHermitianMatrix(sig, sym), spectrum, U


def sample_admissible(
    sig: Signature, cfg: SamplerConfig, rng: np.random.Generator
) -> tuple[PseudoHermitianMatrix, AdmissibleSpectrum]:
    """Planted-spectrum admissible matrix and the spectrum that was planted."""
    A, spectrum, _ = sample_planted(sig, cfg, rng)
    return A, spectrum


def sample_positive_subspace(
    sig: Signature,
    k: int,
    cfg: SamplerConfig,
    rng: np.random.Generator,
    *,
    rotate: bool = False,
) -> np.ndarray:
    """Basis (columns) of a k-dimensional subspace inside the positive cone.

    Graph construction: columns (Q v; K Q v) with Q a p x k isometry and K a
    q x p contraction, so the raw Gram is Q* (I - K* K) Q and its spectrum is
    bounded below by 1 - contraction_cap^2.  With ``rotate`` the basis is
    pushed by a sampled pseudo-unitary, which preserves positivity.
    """
    if not 1 <= k <= sig.p:
        raise ShapeMismatch(f"positive subspaces need 1 <= k <= p = {sig.p}, got k = {k}")
    Q = np.linalg.qr(complex_normal(rng, sig.p, k))[0]
    if sig.q:
        K = complex_normal(rng, sig.q, sig.p)
        kn = np.linalg.norm(K, 2)
        cap = rng.uniform(0.0, cfg.contraction_cap)
        if kn > 0:
            K = K * (cap / kn)
        basis = np.vstack([Q, K @ Q])
    else:
        basis = Q
    if rotate:
        basis = sample_pseudo_unitary(sig, cfg, rng).entries @ basis
    if not subspace_in_positive_cone(basis, sig):
        raise NullDegeneracy("sampled graph subspace failed the positivity margin")
    return basis


def restricted_cone_samples(
    pos_part: np.ndarray,
    neg_part: np.ndarray | None,
    count: int,
    rng: np.random.Generator,
    *,
    cap: float = 0.95,
) -> np.ndarray:
    """Columns of positive vectors inside the span of the given frame columns.

    ``pos_part`` and ``neg_part`` must have pseudo-orthonormal columns of
    positive resp. negative type (e.g. eigenvector blocks).  Coefficients on
    the negative part are scaled below ``cap`` times the positive-part norm,
    which keeps every sample strictly inside the positive cone.
    """
    a = pos_part.shape[1]
    if a < 1:
        raise ShapeMismatch("need at least one positive-type direction")
    alpha = complex_normal(rng, a, count)
    X = pos_part @ alpha
    if neg_part is not None and neg_part.shape[1]:
        beta = complex_normal(rng, neg_part.shape[1], count)
        shrink = rng.uniform(0.0, cap, count)
        na = np.linalg.norm(alpha, axis=0)
        nb = np.linalg.norm(beta, axis=0)
        nb = np.where(nb == 0.0, 1.0, nb)
        beta = beta * (shrink * na / nb)[None, :]
        X = X + neg_part @ beta
    return X


@dataclass(frozen=True)
class PositiveFlag:
    """Nested positive subspaces with dimensions given by a 1-based index tuple.

    ``levels[j]`` is an n x index_tuple[j] basis; each level is a prefix
    extension of the previous one, so nesting holds by construction, and every
    level must pass the positive-cone margin.
    """

    signature: Signature
    index_tuple: tuple[int, ...]
    levels: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        idx = check_index_tuple(self.index_tuple, self.signature.p)
        if len(self.levels) != len(idx):
            raise ShapeMismatch("one basis per index tuple entry required")
        frozen = []
        prev: np.ndarray | None = None
        for dim, basis in zip(idx, self.levels):
            B = np.asarray(basis, dtype=complex)
            if B.shape != (self.signature.n, dim):
                raise ShapeMismatch(f"level basis must be {self.signature.n} x {dim}, got {B.shape}")
            if not subspace_in_positive_cone(B, self.signature):
                raise ValueError("flag level is not inside the positive cone")
            if prev is not None:
                # each earlier basis vector must lie in the next level's span
                coeff, *_ = np.linalg.lstsq(B, prev, rcond=None)
                resid = float(np.max(np.abs(B @ coeff - prev)))
                if resid > 1e-8:
                    raise ValueError(f"flag levels are not nested (residual {resid:.3e})")
            prev = B
            B = np.array(B)
            B.flags.writeable = False
            frozen.append(B)
        object.__setattr__(self, "index_tuple", idx)
        object.__setattr__(self, "levels", tuple(frozen))

    @property
    def depth(self) -> int:
        return len(self.index_tuple)


def subordinate_frame(
    flag: PositiveFlag, cfg: SamplerConfig, rng: np.random.Generator
) -> PseudoOrthonormalFrame:
    """Random pseudo-orthonormal frame with the j-th vector inside level j.

    Vectors are drawn level by level and cleaned against the earlier ones;
    because earlier levels nest inside later ones this preserves membership.
    Near-null pivots trigger a bounded resample of the offending vector.
    """
    sig = flag.signature
    jd = metric_diagonal(sig)
    accepted: list[np.ndarray] = []
    for basis in flag.levels:
        for attempt in range(cfg.max_retries):
            v = basis @ complex_normal(rng, basis.shape[1])
            for _ in range(2):
                for x in accepted:
                    v = v - np.sum(jd * v * x.conj()) * x
            s = float(np.sum(jd * v * v.conj()).real)
            scale = float(np.vdot(v, v).real)
            if scale > 0 and s > 1e-9 * scale:
                accepted.append(v / np.sqrt(s))
                break
        else:
            raise NullDegeneracy(
                f"could not draw a well-paired vector in {cfg.max_retries} attempts"
            )
    return PseudoOrthonormalFrame(sig, np.column_stack(accepted), POSITIVE)


def flag_from_basis(sig: Signature, index_tuple, basis: np.ndarray) -> PositiveFlag:
    """Flag whose levels are column prefixes of one positive basis."""
    idx = check_index_tuple(index_tuple, sig.p)
    if basis.shape[1] < idx[-1]:
        raise ShapeMismatch(f"basis has {basis.shape[1]} columns, top level needs {idx[-1]}")
    return PositiveFlag(sig, idx, tuple(basis[:, :dim] for dim in idx))


def sample_flag_with_subordinate(
    sig: Signature,
    index_tuple,
    cfg: SamplerConfig,
    rng: np.random.Generator,
) -> tuple[PositiveFlag, PseudoOrthonormalFrame]:
    """Random positive flag for the index tuple plus one subordinate frame.

    A single graph basis of top-level dimension is drawn once; flag levels
    are its column prefixes, so nesting is exact.
    """
    idx = check_index_tuple(index_tuple, sig.p)
    basis = sample_positive_subspace(sig, idx[-1], cfg, rng)
    flag = flag_from_basis(sig, idx, basis)
    frame = subordinate_frame(flag, cfg, rng)
    return flag, frame
