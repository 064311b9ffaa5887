"""Concrete systems: the explicit four-level family, the truncated Swanson
Hamiltonian and the truncated shifted oscillator.

Swanson eigenvectors come from dense diagonalization rather than the ladder
chain: ``k A_theta = i sin(theta) k b`` is non-zero in general, so the side
conditions behind the ladder argument do not hold for ``theta != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FdpbRep, derived_ops, validate_rep
from .errors import ExceptionalPointError, ParameterError, RepresentationError
from .matrix import DEFAULT_TOL, Tolerance, commutator, dagger, eig_general, inverse, max_abs
from .report import ReportBuilder, ValidationReport

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def n4_alpha(alpha: float) -> FdpbRep:
    """Explicit non-Hermitian four-level triple depending on a real ``alpha != -1``.

    ``alpha = 0`` gives the truncated oscillator; ``k = diag(0, 0, 0, 1)``
    for every ``alpha``.
    """
    al = float(alpha)
    d = 1.0 + al**3
    if abs(d) < 1e-8:
        raise ParameterError(f"singular family parameter: 1 + alpha^3 = {d:.3e}")
    a = np.array(
        [
            [(1 - SQRT2) * al**2, 1 + SQRT2 * al**3, (SQRT2 - 1) * al, 0],
            [-SQRT2 * al, SQRT2 * al**2, SQRT2, SQRT3 * al * d],
            [al**3, al, -(al**2), SQRT3 * d],
            [0, 0, 0, 0],
        ]
    ) / d
    b = np.array(
        [
            [al, -(al**2), al**3, 0],
            [1 + SQRT2 * al**3, (SQRT2 - 1) * al, (1 - SQRT2) * al**2, 0],
            [SQRT2 * al**2, SQRT2, -SQRT2 * al, 0],
            [-SQRT3 * al, SQRT3 * al**2, SQRT3, 0],
        ]
    ) / d
    k = np.diag([0.0, 0.0, 0.0, 1.0])
    rep = FdpbRep(4, a, b, k, {"generator": "n4-alpha", "params": {"alpha": al}})
    report = validate_rep(rep)
    if not report.passed:
        raise RepresentationError(f"n4_alpha({al}) fails validation: {report.first_failure.line()}", report)
    return rep


def ladder_spectrum(n: int) -> np.ndarray:
    """Sorted eigenvalues carried by the ladder chain: ``1/2, ..., n-3/2`` and ``(n-1)/2``."""
    return np.sort(np.append(np.arange(n - 1) + 0.5, (n - 1) / 2))


@dataclass(frozen=True)
class SwansonModel:
    theta: float
    omega: float
    a_theta: np.ndarray
    b_theta: np.ndarray
    h_theta: np.ndarray
    h_theta_quadratic: np.ndarray
    base_rep: FdpbRep

    @property
    def n(self) -> int:
        return self.base_rep.n


def swanson(rep: FdpbRep, theta: float, tol: Tolerance = DEFAULT_TOL) -> SwansonModel:
    """Truncated Swanson Hamiltonian built on the position/momentum of ``rep``.

    ``h_theta`` is ``omega (B A + (1 - n k)/2)`` and ``h_theta_quadratic`` is
    ``(p^2 + x^2)/2 - (i/2) tan(2 theta) (p^2 - x^2)``; both are required to agree.
    """
    theta = float(theta)
    if not (abs(theta) < np.pi / 4 and abs(theta) > 1e-12):
        raise ParameterError(f"theta must lie in (-pi/4, pi/4) without 0, got {theta!r}")
    d = derived_ops(rep)
    x, p = d.q, d.p
    ep, em = np.exp(1j * theta), np.exp(-1j * theta)
    a_t = (ep * x + 1j * em * p) / SQRT2
    b_t = (ep * x - 1j * em * p) / SQRT2
    omega = 1.0 / np.cos(2 * theta)
    defect = np.eye(rep.n) - rep.n * rep.k
    h_ladder = omega * (b_t @ a_t + 0.5 * defect)
    p2, x2 = p @ p, x @ x
    h_quad = 0.5 * (p2 + x2) - 0.5j * np.tan(2 * theta) * (p2 - x2)
    model = SwansonModel(theta, omega, a_t, b_t, h_ladder, h_quad, rep)
    report = check_swanson(model, tol)
    if not report.passed:
        raise RepresentationError(f"Swanson construction inconsistent: {report.first_failure.line()}", report)
    return model


def check_swanson(model: SwansonModel, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    rep = model.base_rep
    scale = max(max_abs(model.a_theta), max_abs(model.b_theta), 1.0) ** 2 * rep.n * max(model.omega, 1.0)
    rb = ReportBuilder(tol)
    rb.equal(
        "[A_theta,B_theta] - (1 - n k)",
        commutator(model.a_theta, model.b_theta), np.eye(rep.n) - rep.n * rep.k, scale=scale,
    )
    rb.equal("H_theta (ladder) - H_theta (quadratic)", model.h_theta, model.h_theta_quadratic, scale=scale)
    return rb.build()


@dataclass(frozen=True)
class SpectrumReport:
    theta: float
    omega: float
    computed: np.ndarray
    hypothesis_scaled: np.ndarray
    hypothesis_unscaled: np.ndarray
    match_scaled: bool
    match_unscaled: bool
    max_imag: float
    intertwiner_residual: float
    threshold: float

    @property
    def all_real(self) -> bool:
        return self.max_imag <= self.threshold

    @property
    def intertwines(self) -> bool:
        return self.intertwiner_residual <= self.threshold

    @property
    def consistent(self) -> bool:
        """Real spectrum and the intertwining relation hold or fail together."""
        return self.all_real == self.intertwines

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "omega": self.omega,
            "computed": [{"re": float(z.real), "im": float(z.imag)} for z in self.computed],
            "match_scaled": self.match_scaled,
            "match_unscaled": self.match_unscaled,
            "max_imag": self.max_imag,
            "intertwiner_residual": self.intertwiner_residual,
        }


def _multiset_match(computed: np.ndarray, hypothesis: np.ndarray, threshold: float) -> bool:
    target = np.sort_complex(hypothesis.astype(np.complex128))
    return bool(np.max(np.abs(np.sort_complex(computed) - target)) <= threshold)


def biorthogonal_eigensystem(m: np.ndarray, ep_threshold: float = 1e-7):
    """Right eigenvectors of ``m`` and the dual family from the inverse eigenvector matrix.

    Returns ``(values, phis, psis)`` with rows ``phis[i]``, ``psis[i]`` such
    that ``<psi_i, phi_j> = delta_ij``; ``psis[i]`` is an eigenvector of
    ``m^dagger`` for ``conj(values[i])``.
    """
    values, vecs = eig_general(m)
    smallest = np.linalg.svd(vecs, compute_uv=False)[-1]
    if smallest <= ep_threshold:
        raise ExceptionalPointError(
            f"exceptional point: eigenvectors are numerically dependent (sigma_min = {smallest:.3e})"
        )
    duals = dagger(inverse(vecs))
    return values, vecs.T.copy(), duals.T.copy()


def swanson_spectrum_report(model: SwansonModel, tol: Tolerance = DEFAULT_TOL) -> SpectrumReport:
    """Measure the spectrum of ``H_theta`` and the intertwining ``H S_phi = S_phi H^dagger``.

    ``S_phi`` is built from the right eigenvectors of ``H_theta`` normalized
    against the dual family, so the intertwining residual vanishes exactly
    when the spectrum is real.
    """
    h = model.h_theta
    values, phis, _ = biorthogonal_eigensystem(h)
    s_phi = phis.T @ phis.conj()
    residual = max_abs(h @ s_phi - s_phi @ dagger(h))
    threshold = tol.bound(0.0)
    unscaled = ladder_spectrum(model.n)
    return SpectrumReport(
        theta=model.theta,
        omega=model.omega,
        computed=values,
        hypothesis_scaled=model.omega * unscaled,
        hypothesis_unscaled=unscaled,
        match_scaled=_multiset_match(values, model.omega * unscaled, threshold),
        match_unscaled=_multiset_match(values, unscaled, threshold),
        max_imag=float(np.max(np.abs(values.imag))),
        intertwiner_residual=residual,
        threshold=threshold,
    )


@dataclass(frozen=True)
class ShiftedOscillator:
    beta: float
    h_beta: np.ndarray
    spectrum: np.ndarray

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.spectrum.imag)))


def shifted_oscillator(rep: FdpbRep, beta: float) -> ShiftedOscillator:
    """``H_beta = beta (p^2 + x^2)/2 + i sqrt(2) p``; the spectrum is reported, not asserted."""
    beta = float(beta)
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta!r}")
    d = derived_ops(rep)
    h_beta = 0.5 * beta * (d.p @ d.p + d.q @ d.q) + 1j * SQRT2 * d.p
    values, _ = eig_general(h_beta)
    return ShiftedOscillator(beta, h_beta, values)
