"""Polyhedral spectral region: orbit polytope plus a non-compact shift cone.

The region attached to a classified spectrum is the Minkowski sum of the
convex hull of all block-wise permutations of the canonical-order vector
(positive-type block and negative-type block permuted independently) and
the cone spanned by e_i - e_j for every positive-block index i and
negative-block index j.  Membership is decided by a Phase-I simplex on the
convexity-plus-coordinates equality system.

Query vectors use canonical diagonal coordinate order: the positive-type
block descending, then the negative-type block descending.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .checks import CheckReport, finalize_report, make_case
from .core import AdmissibleSpectrum, PseudoHermitianMatrix, Signature
from .errors import (
    ComplexSpectrum,
    GapViolation,
    ShapeMismatch,
    SizeCapExceeded,
    WrongConeCount,
)
from .spectral import check_admissible

#: largest allowed orbit (p! * q!) before build_region refuses
VERTEX_CAP = 40320
LP_TOL = 1e-9


@dataclass(frozen=True)
class PolyhedralRegion:
    """Vertices (rows), cone generators (rows), and the canonical base point."""

    signature: Signature
    base_point: np.ndarray
    vertices: np.ndarray
    generators: np.ndarray

    def __post_init__(self) -> None:
        n = self.signature.n
        base = np.asarray(self.base_point, dtype=float).reshape(-1)
        verts = np.asarray(self.vertices, dtype=float)
        gens = np.asarray(self.generators, dtype=float)
        if base.size != n or verts.ndim != 2 or verts.shape[1] != n:
            raise ShapeMismatch("base point and vertices must live in dimension n")
        if gens.size and (gens.ndim != 2 or gens.shape[1] != n):
            raise ShapeMismatch("generators must live in dimension n")
        sums = verts.sum(axis=1)
        if np.max(np.abs(sums - base.sum()), initial=0.0) > 1e-9:
            raise ValueError("vertex coordinate sums must match the base point")
        if gens.size and np.max(np.abs(gens.sum(axis=1)), initial=0.0) > 1e-12:
            raise ValueError("cone generators must have coordinate sum zero")
        for name, arr in (("base_point", base), ("vertices", verts), ("generators", gens)):
            a = np.array(arr)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    def translate(self, shift) -> "PolyhedralRegion":
        """The region moved by a constant vector (generators are unchanged)."""
        s = np.asarray(shift, dtype=float).reshape(-1)
        if s.size != self.signature.n:
            raise ShapeMismatch(f"shift must have length {self.signature.n}")
        return PolyhedralRegion(
            self.signature, self.base_point + s, self.vertices + s[None, :], self.generators
        )


def build_region(spectrum: AdmissibleSpectrum, *, vertex_cap: int = VERTEX_CAP) -> PolyhedralRegion:
    """Region of a classified spectrum: orbit polytope plus difference cone."""
    sig = spectrum.signature
    orbit = math.factorial(sig.p) * math.factorial(sig.q)
    if orbit > vertex_cap:
        raise SizeCapExceeded(f"orbit has {orbit} vertices, cap is {vertex_cap}")
    lam_desc = tuple(spectrum.lambdas[::-1])
    mu_desc = tuple(spectrum.mus)
    # spectra are our own stored doubles, so exact dedup is safe
    lam_perms = sorted(set(itertools.permutations(lam_desc))) if sig.p else [()]
    mu_perms = sorted(set(itertools.permutations(mu_desc))) if sig.q else [()]
    vertices = np.array(
        [lp + mp for lp in lam_perms for mp in mu_perms], dtype=float
    ).reshape(-1, sig.n)
    gens = []
    for i in range(sig.p):
        for j in range(sig.p, sig.n):
            g = np.zeros(sig.n)
            g[i] = 1.0
            g[j] = -1.0
            gens.append(g)
    generators = np.array(gens, dtype=float).reshape(-1, sig.n) if gens else np.zeros((0, sig.n))
    return PolyhedralRegion(sig, spectrum.canonical_vector(), vertices, generators)


@dataclass(frozen=True)
class FeasibilityCertificate:
    """LP verdict: convex weights over vertices, nonnegative cone weights.

    On feasible points ``residual`` bounds the reconstruction error in the
    max norm (including the convexity row); on infeasible points ``gap`` is
    the Phase-I objective, a total infeasibility measure.
    """

    feasible: bool
    vertex_weights: np.ndarray | None
    generator_weights: np.ndarray | None
    residual: float | None
    gap: float | None


def lp_feasible(region: PolyhedralRegion, point, tol: float = LP_TOL) -> FeasibilityCertificate:
    """Decide membership of a query point in the region.

    Coordinate sums are conserved by the region (vertices share the base sum,
    generators sum to zero), so a sum mismatch beyond ``tol`` is rejected
    before the LP runs.
    """
    x = np.asarray(point, dtype=float).reshape(-1)
    n = region.signature.n
    if x.size != n:
        raise ShapeMismatch(f"query point must have length {n}")
    mismatch = abs(x.sum() - float(region.base_point.sum()))
    if mismatch > tol:
        return FeasibilityCertificate(False, None, None, None, float(mismatch))

    V = region.vertices.shape[0]
    G = region.generators.shape[0]
    A = np.zeros((n + 1, V + G))
    A[:n, :V] = region.vertices.T
    if G:
        A[:n, V:] = region.generators.T
    A[n, :V] = 1.0
    b = np.concatenate([x, [1.0]])

    from .simplex import phase_one_feasible

    result = phase_one_feasible(A, b, tol=tol)
    if not result.feasible:
        return FeasibilityCertificate(False, None, None, None, result.objective)
    t = result.x[:V]
    s = result.x[V:]
    residual = float(np.max(np.abs(A @ result.x - b)))
    return FeasibilityCertificate(True, t, s, residual, None)


def _membership_case(case_id: str, cert: FeasibilityCertificate, tol: float):
    if cert.feasible:
        return make_case(case_id, (), cert.residual, 0.0, -cert.residual, tol)
    return make_case(case_id, (), cert.gap, 0.0, -cert.gap, tol)


def canonical_block_order(values: np.ndarray, sig: Signature) -> np.ndarray:
    """Sort the first p and the last q entries descending, independently."""
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.size != sig.n:
        raise ShapeMismatch(f"expected length {sig.n}, got {v.size}")
    return np.concatenate([np.sort(v[: sig.p])[::-1], np.sort(v[sig.p :])[::-1]])


def check_diag_membership(A: PseudoHermitianMatrix, tol: float = LP_TOL) -> CheckReport:
    """The reordered diagonal of an admissible matrix lies in its own region."""
    sig = A.signature
    spectrum = check_admissible(A)
    region = build_region(spectrum)
    diag = canonical_block_order(np.diag(A.entries).real, sig)
    cert = lp_feasible(region, diag, tol)
    cases = [_membership_case("diagonal", cert, tol)]
    return finalize_report("polyhedral_diag", sig, {"lp_tol": tol}, tol, cases)


def check_sum_membership(
    A: PseudoHermitianMatrix, B: PseudoHermitianMatrix, tol: float = LP_TOL
) -> CheckReport:
    """The spectrum of A + B lies in each summand's translated region.

    Checked both ways: region of B translated by the spectrum vector of A,
    and region of A translated by the spectrum vector of B.
    """
    if A.signature != B.signature:
        raise ShapeMismatch("signatures must match")
    sig = A.signature
    descriptor = {"lp_tol": tol}
    specA = check_admissible(A)
    specB = check_admissible(B)
    C = PseudoHermitianMatrix(sig, A.entries + B.entries, tol=A.tol + B.tol)
    try:
        specC = check_admissible(C)
    except (ComplexSpectrum, WrongConeCount, GapViolation) as exc:
        case = make_case("admissible_sum", (), 0.0, 0.0, -1.0, tol)
        return finalize_report(
            "polyhedral_sum",
            sig,
            descriptor,
            tol,
            [case],
            notes=[f"sum_not_admissible: {type(exc).__name__}: {exc}"],
        )
    point = specC.canonical_vector()
    cases = []
    for tag, base, other in (
        ("sum_in_region_of_B", specA, specB),
        ("sum_in_region_of_A", specB, specA),
    ):
        region = build_region(other).translate(base.canonical_vector())
        cert = lp_feasible(region, point, tol)
        cases.append(_membership_case(tag, cert, tol))
    return finalize_report("polyhedral_sum", sig, descriptor, tol, cases)
