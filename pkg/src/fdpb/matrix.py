"""Dense complex linear algebra kernel.

Every operator in the package is a square ``complex128`` numpy array and every
state is a 1-D ``complex128`` array.  The helpers here are thin, pure wrappers
around :mod:`numpy.linalg` that add the tolerance conventions used throughout:
equality is always judged on the maximum absolute entry difference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    EigenSolverError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "as_vector",
    "max_abs",
    "dagger",
    "commutator",
    "anticommutator",
    "inner",
    "ket_bra",
    "null_space",
    "eig_hermitian",
    "eig_general",
    "sqrt_pd",
    "inverse",
    "condition_number",
]


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative tolerance.

    A residual ``r`` measured against quantities of magnitude ``scale`` is
    accepted when ``r <= abs_eps + rel_eps * scale``.
    """

    abs_eps: float = 1e-10
    rel_eps: float = 1e-10

    def __post_init__(self):
        if not (np.isfinite(self.abs_eps) and np.isfinite(self.rel_eps)):
            raise ValueError("tolerances must be finite")
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_eps == 0 and self.rel_eps == 0:
            raise ValueError("at least one tolerance must be strictly positive")

    def bound(self, scale: float = 0.0) -> float:
        return self.abs_eps + self.rel_eps * float(scale)


DEFAULT_TOL = Tolerance()


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce ``x`` to a finite square complex matrix."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def _same_dim(*mats):
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def max_abs(x) -> float:
    """Max-abs entry norm; 0 for empty input."""
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def dagger(x) -> np.ndarray:
    return np.conj(np.asarray(x)).T


def commutator(x, y) -> np.ndarray:
    """Return ``xy - yx``."""
    x, y = as_matrix(x), as_matrix(y)
    _same_dim(x, y)
    return x @ y - y @ x


def anticommutator(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    _same_dim(x, y)
    return x @ y + y @ x


def inner(x, y) -> complex:
    """Inner product, antilinear in the first argument."""
    return complex(np.vdot(x, y))


def ket_bra(x, y) -> np.ndarray:
    """Rank-one operator ``|x><y|``."""
    return np.outer(x, np.conj(y))


def null_space(m, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel of ``m``.

    Right singular vectors whose singular value is at most
    ``tol.abs_eps + tol.rel_eps * sigma_max`` are returned; an empty list
    means ``m`` is numerically full rank.
    """
    m = as_matrix(m)
    _, s, vh = np.linalg.svd(m)
    cutoff = tol.bound(s[0] if s.size else 0.0)
    return [vh[i].conj().copy() for i in range(len(s)) if s[i] <= cutoff]


def _check_hermitian(m, tol):
    dev = np.abs(m - m.conj().T)
    worst = float(dev.max())
    if worst > tol.bound(max_abs(m)):
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise NotHermitianError(
            f"matrix is not Hermitian: |M[{i},{j}] - conj(M[{j},{i}])| = {worst:.3e}"
        )


def eig_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns real eigenvalues in ascending order and a unitary matrix whose
    columns are the matching eigenvectors.
    """
    m = as_matrix(m)
    _check_hermitian(m, tol)
    herm = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc
    return w, v


def _spectral_key(values):
    # real parts are snapped to a grid so that conjugate pairs order by imaginary part
    return np.lexsort((values.imag, np.round(values.real, 9)))


def eig_general(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors of an arbitrary square matrix.

    Eigenvalues are sorted by real part, then imaginary part; eigenvector
    columns are unit-norm and follow the same order.
    """
    m = as_matrix(m)
    try:
        w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc
    order = _spectral_key(w)
    return w[order], v[:, order]


def _pd_eigensystem(m, tol):
    w, v = eig_hermitian(m, tol)
    floor = tol.abs_eps
    if w[0] <= floor:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: smallest eigenvalue {w[0]:.3e} <= {floor:.1e}"
        )
    return w, v


def sqrt_pd(m, tol: Tolerance = DEFAULT_TOL, *, inverse: bool = False) -> np.ndarray:
    """Unique Hermitian positive-definite square root of ``m``.

    With ``inverse=True`` the inverse square root is returned instead, from
    the same eigendecomposition.
    """
    w, v = _pd_eigensystem(as_matrix(m), tol)
    root = np.sqrt(w)
    if inverse:
        root = 1.0 / root
    r = (v * root) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def inverse(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    m = as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= tol.abs_eps:
        raise SingularMatrixError(f"matrix is singular: smallest singular value {s[-1]:.3e}")
    return np.linalg.inv(m)


def condition_number(m) -> float:
    """2-norm condition number; ``inf`` for singular input."""
    s = np.linalg.svd(as_matrix(m), compute_uv=False)
    return float(s[0] / s[-1]) if s[-1] > 0 else float("inf")
