"""Biorthonormal eigenvector chains of ``h`` and ``h^dagger``.

The chain for ``h`` starts from the vector killed by ``b`` (the ``k' = 1``
top) and descends with ``a``; the chain for ``h^dagger`` starts from the
vector killed by ``a^dagger`` and descends with ``b^dagger``.  Ladder
coefficients follow the convention ``nu = mu = sqrt(m)``, where ``m`` is the
eigenvalue of ``N = ba`` on the source vector of the step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import FdpbRep, derived_ops
from .errors import BrokenChainError, DegenerateRepresentationError, RepresentationError
from .matrix import DEFAULT_TOL, Tolerance, dagger, inner, ket_bra, max_abs, null_space
from .report import ReportBuilder, ValidationReport


@dataclass(frozen=True, order=True)
class Label:
    """Eigenvalue pair ``(h', k')`` with ``h'`` stored as the integer ``2 h'``."""

    h2: int
    k: int

    def __post_init__(self):
        if self.k not in (0, 1):
            raise ValueError(f"k' must be 0 or 1, got {self.k}")
        if self.h2 < 0:
            raise ValueError("h' must be non-negative")

    @property
    def hprime(self) -> float:
        return self.h2 / 2

    def __str__(self) -> str:
        return f"({Fraction(self.h2, 2)}, {self.k})"


def chain_labels(n: int) -> tuple[Label, ...]:
    """Labels from the top ``((n-1)/2, 1)`` down to ``(1/2, 0)``."""
    return (Label(n - 1, 1),) + tuple(Label(2 * j + 1, 0) for j in range(n - 2, -1, -1))


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Eigenvector chains; row ``i`` of ``phis``/``psis`` carries ``labels[i]``."""

    n: int
    labels: tuple[Label, ...]
    phis: np.ndarray
    psis: np.ndarray
    nus: np.ndarray
    mus: np.ndarray

    def __post_init__(self):
        for name in ("phis", "psis", "nus", "mus"):
            arr = np.array(getattr(self, name), dtype=np.complex128 if name in ("phis", "psis") else float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.phis.shape != (self.n, self.n) or self.psis.shape != (self.n, self.n):
            raise ValueError("phis and psis must each hold n vectors of length n")
        if len(self.labels) != self.n or self.nus.shape != (self.n - 1,) or self.mus.shape != (self.n - 1,):
            raise ValueError("inconsistent chain lengths")

    @property
    def nhat_values(self) -> np.ndarray:
        """Eigenvalues of ``ba`` down the chain: ``n-1, n-2, ..., 0``."""
        return np.arange(self.n - 1, -1, -1)

    @property
    def mhat_values(self) -> np.ndarray:
        """Eigenvalues of ``ab`` down the chain: ``0`` on the top, ``m+1`` below."""
        return np.array([0] + [m + 1 for m in self.nhat_values[1:]])

    @property
    def hprimes(self) -> np.ndarray:
        return np.array([lab.hprime for lab in self.labels])

    @property
    def kprimes(self) -> np.ndarray:
        return np.array([lab.k for lab in self.labels])

    def gram(self) -> np.ndarray:
        """Matrix of pairings ``<psi_i, phi_j>``."""
        return self.psis.conj() @ self.phis.T


def _phase_fix(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    big = np.abs(v) > 1e-8 * np.max(np.abs(v))
    first = v[np.argmax(big)]
    return v * (abs(first) / first)


def _seed(rep: FdpbRep, killer: np.ndarray, what: str, tol: Tolerance) -> np.ndarray:
    kernel = null_space(killer, tol)
    if len(kernel) != 1:
        raise DegenerateRepresentationError(
            f"degenerate representation: kernel of {what} has dimension {len(kernel)}, expected 1"
        )
    v = _phase_fix(kernel[0])
    resid = max_abs(rep.k @ v - v)
    if resid > tol.bound(max(max_abs(rep.k), 1.0)):
        raise RepresentationError(f"kernel vector of {what} is not fixed by k (residual {resid:.3e})")
    return v


def seed_phi(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Unit vector spanning ``ker b``, first non-negligible entry real positive."""
    return _seed(rep, rep.b, "b", tol)


def seed_psi(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Unit vector spanning ``ker a^dagger``, first non-negligible entry real positive."""
    return _seed(rep, dagger(rep.a), "a^dagger", tol)


def build_system(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> BiorthogonalSystem:
    """Build the biorthonormal chains by ladder descent from the ``k' = 1`` top."""
    n, a = rep.n, rep.a
    a_adj_psi = dagger(rep.b)  # lowers the psi chain
    phi = seed_phi(rep, tol)
    psi = seed_psi(rep, tol)
    pairing = inner(psi, phi)
    if abs(pairing) <= tol.bound(1.0):
        raise RepresentationError(f"non-diagonalizable pairing: <psi_top, phi_top> = {pairing:.3e}")
    psi = psi / np.conj(pairing)

    phis, psis, nus = [phi], [psi], []
    for m in range(n - 1, 0, -1):
        a_phi = a @ phi
        b_psi = a_adj_psi @ psi
        if max_abs(a_phi) <= tol.bound(max_abs(a) * max_abs(phi)) or max_abs(b_psi) <= tol.bound(
            max_abs(a_adj_psi) * max_abs(psi)
        ):
            raise BrokenChainError(f"broken chain: ladder vanished after {n - 1 - m} of {n - 1} steps")
        root = np.sqrt(m)
        phi, psi = a_phi / root, b_psi / root
        phis.append(phi)
        psis.append(psi)
        nus.append(root)

    # the only vector that can feed the k' = 1 level is the one just below the top
    kb = rep.k @ rep.b @ phis[1]
    if max_abs(kb) <= tol.bound(max_abs(rep.b) * max_abs(phis[1])):
        raise BrokenChainError("k b phi_(n-3/2, 0) vanishes; the chain does not close on the top vector")
    for vec, op, what in ((phis[-1], a, "a phi_(1/2,0)"), (psis[-1], a_adj_psi, "b^dagger psi_(1/2,0)")):
        if max_abs(op @ vec) > tol.bound(max_abs(op) * max_abs(vec)):
            raise BrokenChainError(f"broken chain: {what} does not vanish")

    system = BiorthogonalSystem(n, chain_labels(n), np.array(phis), np.array(psis), nus, nus)
    norms = np.linalg.norm(system.phis, axis=1) * np.linalg.norm(system.psis, axis=1)
    resid = max_abs(system.gram() - np.eye(n))
    if resid > tol.bound(float(norms.max())):
        raise RepresentationError(f"chains are not biorthonormal: residual {resid:.3e}")
    return system


def reconstruct_operators(sys: BiorthogonalSystem) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one expansions of ``a`` and ``b`` on the biorthonormal chains."""
    a_rec = np.zeros((sys.n, sys.n), dtype=np.complex128)
    b_rec = np.zeros_like(a_rec)
    for j, m in enumerate(sys.nhat_values[:-1]):
        a_rec += sys.nus[j] * ket_bra(sys.phis[j + 1], sys.psis[j])
        b_rec += (m / sys.nus[j]) * ket_bra(sys.phis[j], sys.psis[j + 1])
    return a_rec, b_rec


def verify_system(rep: FdpbRep, sys: BiorthogonalSystem, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Residuals of every eigen-, ladder- and pairing relation of the chains."""
    d = derived_ops(rep)
    k, a, b = rep.k, rep.a, rep.b
    scale = max(max_abs(d.h), max_abs(d.nhat), max_abs(d.mhat), 1.0) * max(
        max_abs(sys.phis), max_abs(sys.psis), 1.0
    ) * sys.n
    rb = ReportBuilder(tol)
    for i, lab in enumerate(sys.labels):
        phi, psi = sys.phis[i], sys.psis[i]
        rb.equal(f"h phi{lab} - h' phi", d.h @ phi, lab.hprime * phi, scale=scale)
        rb.equal(f"k phi{lab} - k' phi", k @ phi, lab.k * phi, scale=scale)
        rb.equal(f"h^dagger psi{lab} - h' psi", d.h_adj @ psi, lab.hprime * psi, scale=scale)
        rb.equal(f"k psi{lab} - k' psi", k @ psi, lab.k * psi, scale=scale)
        rb.equal(f"N phi{lab} - m phi", d.nhat @ phi, sys.nhat_values[i] * phi, scale=scale)
        rb.equal(f"M phi{lab} - m' phi", d.mhat @ phi, sys.mhat_values[i] * phi, scale=scale)

    for j, m in enumerate(sys.nhat_values[:-1]):
        rb.equal(
            f"b phi{sys.labels[j + 1]} - (m/nu) phi{sys.labels[j]}",
            b @ sys.phis[j + 1], (m / sys.nus[j]) * sys.phis[j], scale=scale,
        )
        rb.equal(
            f"a^dagger psi{sys.labels[j + 1]} - (m/mu) psi{sys.labels[j]}",
            dagger(a) @ sys.psis[j + 1], (m / sys.mus[j]) * sys.psis[j], scale=scale,
        )
        rb.residual(
            f"pairing step {sys.labels[j]} -> {sys.labels[j + 1]}",
            abs(inner(sys.psis[j + 1], sys.phis[j + 1]) - inner(sys.psis[j], sys.phis[j])),
            scale,
        )

    rb.equal("b phi_top", b @ sys.phis[0], scale=scale)
    rb.equal("a phi_bottom", a @ sys.phis[-1], scale=scale)
    rb.equal("a^dagger psi_top", dagger(a) @ sys.psis[0], scale=scale)
    rb.equal("b^dagger psi_bottom", dagger(b) @ sys.psis[-1], scale=scale)

    rb.equal("<psi_i, phi_j> - delta_ij", sys.gram(), np.eye(sys.n), scale=scale)
    top_k = sys.kprimes == 1
    rb.equal("<phi_(k'=1), phi_(k'=0)>", sys.phis[top_k].conj() @ sys.phis[~top_k].T, scale=scale)
    rb.equal("sum |phi><psi| - 1", sys.phis.T @ sys.psis.conj(), np.eye(sys.n), scale=scale)
    rb.equal("sum |psi><phi| - 1", sys.psis.T @ sys.phis.conj(), np.eye(sys.n), scale=scale)
    return rb.build()


def verify_reconstruction(rep: FdpbRep, sys: BiorthogonalSystem, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Compare the rank-one expansions with ``a``, ``b`` and the psi-chain ladders."""
    a_rec, b_rec = reconstruct_operators(sys)
    scale = max(max_abs(rep.a), max_abs(rep.b), 1.0) * sys.n
    rb = ReportBuilder(tol)
    rb.equal("a_rec - a", a_rec, rep.a, scale=scale)
    rb.equal("b_rec - b", b_rec, rep.b, scale=scale)
    for j, m in enumerate(sys.nhat_values[:-1]):
        rb.equal(
            f"b_rec^dagger psi{sys.labels[j]} - mu psi{sys.labels[j + 1]}",
            dagger(b_rec) @ sys.psis[j], sys.mus[j] * sys.psis[j + 1], scale=scale,
        )
        rb.equal(
            f"a_rec^dagger psi{sys.labels[j + 1]} - (m/mu) psi{sys.labels[j]}",
            dagger(a_rec) @ sys.psis[j + 1], (m / sys.mus[j]) * sys.psis[j], scale=scale,
        )
    return rb.build()
