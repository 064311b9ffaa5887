"""Finite-dimensional pseudo-bosonic triples ``(a, b, k)``.

A triple obeys ``[a, b] = 1 - n k`` with ``k`` an orthogonal projector and
``k a = b k = 0``.  The Hermitian special case ``b = a^dagger`` is the
truncated oscillator (``buchdahl_rep``); non-Hermitian triples are produced
from it by block-diagonal similarity (``similarity_deform``).

Construction never validates: any three matrices may be wrapped in an
:class:`FdpbRep`, and :func:`validate_rep` is the explicit check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import ParameterError, RepresentationError
from .matrix import (
    DEFAULT_TOL,
    Tolerance,
    anticommutator,
    as_matrix,
    commutator,
    condition_number,
    dagger,
    inverse,
    max_abs,
)
from .report import ReportBuilder, ValidationReport

SQRT2 = np.sqrt(2.0)


def _frozen(m, n, name):
    m = as_matrix(m, name).copy()
    if m.shape != (n, n):
        raise ValueError(f"{name} has shape {m.shape}, expected ({n}, {n})")
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class FdpbRep:
    """A candidate triple ``(a, b, k)`` on an ``n``-dimensional space."""

    n: int
    a: np.ndarray
    b: np.ndarray
    k: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("a", "b", "k"):
            object.__setattr__(self, name, _frozen(getattr(self, name), self.n, name))

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=np.complex128)

    def with_meta(self, **meta) -> "FdpbRep":
        return FdpbRep(self.n, self.a, self.b, self.k, {**self.meta, **meta})


@dataclass(frozen=True)
class HermitianRep:
    """Hermitian triple ``(c, c^dagger, K)`` with ``[c, c^dagger] = 1 - n K``."""

    n: int
    c: np.ndarray
    bigK: np.ndarray

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "c", _frozen(self.c, self.n, "c"))
        object.__setattr__(self, "bigK", _frozen(self.bigK, self.n, "K"))

    def as_fdpb(self, **meta) -> FdpbRep:
        return FdpbRep(self.n, self.c, dagger(self.c), self.bigK, meta)


@dataclass(frozen=True)
class DerivedOperators:
    q: np.ndarray
    p: np.ndarray
    h: np.ndarray
    h_adj: np.ndarray
    mhat: np.ndarray
    nhat: np.ndarray


def buchdahl_rep(n: int) -> HermitianRep:
    """Truncated oscillator: ``c|m> = sqrt(m)|m-1>`` and ``K`` the last-level projector."""
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    c = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(np.complex128)
    bigK = np.zeros((n, n), dtype=np.complex128)
    bigK[-1, -1] = 1.0
    return HermitianRep(n, c, bigK)


def block_similarity(s0, s: complex) -> np.ndarray:
    s0 = np.atleast_2d(np.asarray(s0, dtype=np.complex128))
    m = s0.shape[0]
    S = np.zeros((m + 1, m + 1), dtype=np.complex128)
    S[:m, :m] = s0
    S[m, m] = s
    return S


def similarity_deform(
    base: HermitianRep,
    s0,
    s: complex = 1.0,
    tol: Tolerance = DEFAULT_TOL,
    condition_cap: float = 1e6,
    check: bool = True,
) -> FdpbRep:
    """Conjugate a Hermitian triple by ``S = diag(s0, s)``.

    Returns ``a = S c S^-1``, ``b = S c^dagger S^-1`` and ``k = S K S^-1``.
    With ``check`` set, raises :class:`RepresentationError` if the result
    fails :func:`validate_rep`.
    """
    n = base.n
    s0 = np.atleast_2d(np.asarray(s0, dtype=np.complex128))
    if s0.shape != (n - 1, n - 1):
        raise ValueError(f"s0 must be {n - 1}x{n - 1}, got {s0.shape}")
    if abs(s) <= tol.abs_eps:
        raise ParameterError("s must be non-zero")
    inverse(s0, tol)  # raises on singular s0
    S = block_similarity(s0, s)
    cond = condition_number(S)
    if cond > condition_cap:
        raise ParameterError(f"similarity is ill-conditioned: cond(S) = {cond:.3e} > {condition_cap:.1e}")
    S_inv = inverse(S, tol)
    rep = FdpbRep(
        n,
        S @ base.c @ S_inv,
        S @ dagger(base.c) @ S_inv,
        S @ base.bigK @ S_inv,
        {"generator": "similarity"},
    )
    if not check:
        return rep
    report = validate_rep(rep, tol)
    if not report.passed:
        raise RepresentationError(
            f"deformed triple violates its relations: {report.first_failure.line()}", report
        )
    return rep


def random_similarity(
    n: int, rng: np.random.Generator | int | None = None, condition_cap: float = 100.0, max_tries: int = 10_000
) -> tuple[np.ndarray, complex]:
    """Draw ``(s0, s)`` with entries uniform on ``[-1, 1]^2`` until ``cond(S) < condition_cap``."""
    rng = np.random.default_rng(rng)
    m = n - 1
    for _ in range(max_tries):
        s0 = rng.uniform(-1, 1, (m, m)) + 1j * rng.uniform(-1, 1, (m, m))
        s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if condition_number(block_similarity(s0, s)) < condition_cap:
            return s0, s
    raise ParameterError(f"no similarity with condition < {condition_cap} after {max_tries} draws")


def validate_rep(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Residuals of the defining relations of a triple.

    The trace condition is reported first: a commutator of finite matrices
    is traceless, so ``[a, b] = 1 - n k`` forces ``tr k = 1``.
    """
    a, b, k, n = rep.a, rep.b, rep.k, rep.n
    one = rep.identity
    na, nb, nk = max_abs(a), max_abs(b), max_abs(k)
    rb = ReportBuilder(tol)
    rb.residual("tr(k) - 1", abs(np.trace(k) - 1.0), n)
    rb.equal("k - k^2", k, k @ k, scale=max(nk, n * nk * nk, 1.0))
    rb.equal("k - k^dagger", k, dagger(k))
    rb.equal("[a,b] - (1 - n k)", commutator(a, b), one - n * k, scale=max(n * na * nb, n * nk, 1.0))
    rb.equal("k a", k @ a, scale=max(n * nk * na, 1.0))
    rb.equal("b k", b @ k, scale=max(n * nb * nk, 1.0))
    return rb.build()


def derived_ops(rep: FdpbRep) -> DerivedOperators:
    """Position/momentum-like operators, ``h = (p^2 + q^2)/2`` and the number-like operators."""
    a, b = rep.a, rep.b
    q = (a + b) / SQRT2
    p = (a - b) / (SQRT2 * 1j)
    h = 0.5 * (p @ p + q @ q)
    return DerivedOperators(q=q, p=p, h=h, h_adj=dagger(h), mhat=a @ b, nhat=b @ a)


def check_identities(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Residuals of the operator identities implied by a valid triple."""
    a, b, k, n = rep.a, rep.b, rep.k, rep.n
    one = rep.identity
    d = derived_ops(rep)
    h = d.h
    half_defect = 0.5 * (one - n * k)
    s = max(max_abs(a), max_abs(b), max_abs(h), 1.0) ** 2 * n

    rb = ReportBuilder(tol)
    rb.equal("[a,h] - (a - n a k / 2)", commutator(a, h), a - 0.5 * n * a @ k, scale=s)
    rb.equal("[b,h] - (-b + n k b / 2)", commutator(b, h), -b + 0.5 * n * k @ b, scale=s)
    rb.equal("h - (ba + (1 - n k)/2)", h, d.nhat + half_defect, scale=s)
    rb.equal("h - (ab - (1 - n k)/2)", h, d.mhat - half_defect, scale=s)
    rb.equal("{a,b} - 2h", anticommutator(a, b), 2 * h, scale=s)
    rb.equal("[k,h]", commutator(k, h), scale=s)
    rb.equal("kh + (1 - n) k / 2", k @ h, -0.5 * (1 - n) * k, scale=s)
    rb.equal("[N,h]", commutator(d.nhat, h), scale=s * s)
    rb.equal("[M,h]", commutator(d.mhat, h), scale=s * s)
    rb.equal("[N,k]", commutator(d.nhat, k), scale=s)
    rb.equal("[M,k]", commutator(d.mhat, k), scale=s)
    rb.equal("[q,p] - i(1 - n k)", commutator(d.q, d.p), 1j * (one - n * k), scale=s)
    return rb.build()
