"""Metric operators of a biorthonormal system and the map back to a Hermitian triple."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FdpbRep, HermitianRep, derived_ops
from .chain import BiorthogonalSystem, Label
from .errors import NotHermitianError, NotPositiveDefiniteError, RepresentationError
from .matrix import DEFAULT_TOL, Tolerance, commutator, dagger, max_abs, sqrt_pd
from .report import ReportBuilder, ValidationReport


@dataclass(frozen=True)
class MetricPair:
    s_phi: np.ndarray
    s_psi: np.ndarray
    s_psi_sqrt: np.ndarray
    s_psi_sqrt_inv: np.ndarray


@dataclass(frozen=True)
class HermitianSystem:
    """Hermitized triple and the orthonormal basis ``e_i = S_psi^(1/2) phi_i``."""

    n: int
    c: np.ndarray
    bigK: np.ndarray
    labels: tuple[Label, ...]
    e_basis: np.ndarray

    @property
    def h0(self) -> np.ndarray:
        """``c^dagger c + (1 - n K)/2``."""
        return dagger(self.c) @ self.c + 0.5 * (np.eye(self.n) - self.n * self.bigK)

    def as_hermitian_rep(self) -> HermitianRep:
        return HermitianRep(self.n, self.c, self.bigK)


def _gram_operator(vectors: np.ndarray) -> np.ndarray:
    s = vectors.T @ vectors.conj()
    return 0.5 * (s + dagger(s))


def build_metrics(sys: BiorthogonalSystem, tol: Tolerance = DEFAULT_TOL) -> MetricPair:
    """``S_phi = sum |phi><phi|``, ``S_psi = sum |psi><psi|`` and the square roots of ``S_psi``."""
    s_phi = _gram_operator(sys.phis)
    s_psi = _gram_operator(sys.psis)
    try:
        sqrt_pd(s_phi, tol)
        root = sqrt_pd(s_psi, tol)
        root_inv = sqrt_pd(s_psi, tol, inverse=True)
    except (NotHermitianError, NotPositiveDefiniteError) as exc:
        raise RepresentationError(f"metric is not positive definite; chains are broken upstream: {exc}") from exc
    mp = MetricPair(s_phi, s_psi, root, root_inv)
    one = np.eye(sys.n)
    scale = max(max_abs(s_phi), max_abs(s_psi), 1.0) ** 2 * sys.n
    for name, lhs, rhs in (
        ("S_phi S_psi - 1", s_phi @ s_psi, one),
        ("S_psi^(1/2) S_psi^(1/2) - S_psi", root @ root, s_psi),
        ("S_psi^(1/2) S_psi^(-1/2) - 1", root @ root_inv, one),
    ):
        resid = max_abs(lhs - rhs)
        if resid > tol.bound(scale):
            raise RepresentationError(f"metric invariant failed: {name} residual {resid:.3e}")
    return mp


def verify_metrics(
    rep: FdpbRep, sys: BiorthogonalSystem, mp: MetricPair, tol: Tolerance = DEFAULT_TOL
) -> ValidationReport:
    d = derived_ops(rep)
    s_phi, s_psi = mp.s_phi, mp.s_psi
    one = np.eye(rep.n)
    ops = max(max_abs(rep.a), max_abs(rep.b), max_abs(d.h), 1.0)
    scale = max(max_abs(s_phi), max_abs(s_psi), 1.0) ** 2 * ops * rep.n
    rb = ReportBuilder(tol)
    rb.equal("S_phi S_psi - 1", s_phi @ s_psi, one, scale=scale)
    rb.equal("S_psi S_phi - 1", s_psi @ s_phi, one, scale=scale)
    rb.equal("S_phi - S_phi^dagger", s_phi, dagger(s_phi), scale=scale)
    rb.equal("S_psi - S_psi^dagger", s_psi, dagger(s_psi), scale=scale)
    for i, lab in enumerate(sys.labels):
        rb.equal(f"S_phi psi{lab} - phi", s_phi @ sys.psis[i], sys.phis[i], scale=scale)
        rb.equal(f"S_psi phi{lab} - psi", s_psi @ sys.phis[i], sys.psis[i], scale=scale)
    rb.equal("S_psi b - a^dagger S_psi", s_psi @ rep.b, dagger(rep.a) @ s_psi, scale=scale)
    rb.equal("[k, S_psi]", commutator(rep.k, s_psi), scale=scale)
    rb.equal("h S_phi - S_phi h^dagger", d.h @ s_phi, s_phi @ d.h_adj, scale=scale)
    return rb.build()


def hermitize(
    rep: FdpbRep, sys: BiorthogonalSystem, mp: MetricPair, tol: Tolerance = DEFAULT_TOL
) -> HermitianSystem:
    """Conjugate the triple by ``S_psi^(1/2)``.

    Raises :class:`RepresentationError` if ``S_psi^(1/2) b S_psi^(-1/2)`` is
    not the adjoint of ``c``, or if the result is not a Hermitian triple with
    an orthonormal eigenbasis of ``H0``.
    """
    root, root_inv = mp.s_psi_sqrt, mp.s_psi_sqrt_inv
    c = root @ rep.a @ root_inv
    c_adj = root @ rep.b @ root_inv
    bigK = root @ rep.k @ root_inv
    e_basis = sys.phis @ root.T  # row i is root @ phi_i

    scale = max(max_abs(root), max_abs(root_inv), 1.0) ** 2 * max(max_abs(rep.a), max_abs(rep.b), 1.0) * rep.n
    resid = max_abs(dagger(c) - c_adj)
    if resid > tol.bound(scale):
        raise RepresentationError(
            f"S_psi^(1/2) b S_psi^(-1/2) is not c^dagger (residual {resid:.3e}); mu != nu convention violated upstream"
        )
    hs = HermitianSystem(rep.n, c, bigK, sys.labels, e_basis)
    report = verify_hermitian_system(hs, tol, scale=scale)
    if not report.passed:
        raise RepresentationError(f"hermitized triple fails: {report.first_failure.line()}", report)
    return hs


def verify_hermitian_system(hs: HermitianSystem, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> ValidationReport:
    n, c, K = hs.n, hs.c, hs.bigK
    one = np.eye(n)
    if scale is None:
        scale = max(max_abs(c), 1.0) ** 2 * n
    h0 = hs.h0
    rb = ReportBuilder(tol)
    rb.equal("[c,c^dagger] - (1 - n K)", commutator(c, dagger(c)), one - n * K, scale=scale)
    rb.equal("K c", K @ c, scale=scale)
    rb.equal("K - K^2", K, K @ K, scale=scale)
    rb.equal("K - K^dagger", K, dagger(K), scale=scale)
    rb.equal("<e_i, e_j> - delta_ij", hs.e_basis.conj() @ hs.e_basis.T, one, scale=scale)
    rb.equal("H0 - H0^dagger", h0, dagger(h0), scale=scale)
    for i, lab in enumerate(hs.labels):
        e = hs.e_basis[i]
        rb.equal(f"H0 e{lab} - h' e", h0 @ e, lab.hprime * e, scale=scale)
        rb.equal(f"K e{lab} - k' e", K @ e, lab.k * e, scale=scale)
    return rb.build()
