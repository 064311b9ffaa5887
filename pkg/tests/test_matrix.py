import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import py_matmul
from fdpb import buchdahl_rep, build_system, build_metrics, n4_alpha
from fdpb.errors import (
    DimensionError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)
from fdpb.matrix import (
    Tolerance,
    commutator,
    eig_general,
    eig_hermitian,
    inverse,
    max_abs,
    null_space,
    sqrt_pd,
)


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


@pytest.fixture(scope="module")
def metrics_n4():
    return build_metrics(build_system(n4_alpha(0.5)))


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.abs_eps == 1e-10 and tol.rel_eps == 1e-10

    @pytest.mark.parametrize("abs_eps,rel_eps", [(-1, 0), (0, -1e-3), (0, 0), (float("nan"), 1e-3)])
    def test_rejects(self, abs_eps, rel_eps):
        with pytest.raises(ValueError):
            Tolerance(abs_eps, rel_eps)

    def test_bound(self):
        assert Tolerance(1e-3, 1e-2).bound(10) == pytest.approx(0.101)


class TestCommutator:
    def test_identity_commutes(self):
        y = random_complex(np.random.default_rng(0), 3)
        assert max_abs(commutator(np.eye(3), y)) == 0.0

    def test_raising_lowering_pair(self):
        x = np.array([[0, 1], [0, 0]])
        np.testing.assert_array_equal(commutator(x, x.T), np.diag([1, -1]))

    def test_buchdahl_four(self):
        c = buchdahl_rep(4).c
        oracle_ab = py_matmul(c.tolist(), c.conj().T.tolist())
        oracle_ba = py_matmul(c.conj().T.tolist(), c.tolist())
        oracle = np.array(oracle_ab) - np.array(oracle_ba)
        np.testing.assert_allclose(oracle, np.diag([1, 1, 1, -3]), atol=1e-14)
        np.testing.assert_allclose(commutator(c, c.conj().T), oracle, atol=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            commutator(np.eye(2), np.eye(3))

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_antisymmetry_exact(self, n, seed):
        rng = np.random.default_rng(seed)
        x, y = random_complex(rng, n), random_complex(rng, n)
        np.testing.assert_array_equal(commutator(x, y), -commutator(y, x))


class TestNullSpace:
    def test_zero_matrix(self):
        basis = null_space(np.zeros((2, 2)))
        assert len(basis) == 2
        g = np.array([[np.vdot(u, v) for v in basis] for u in basis])
        np.testing.assert_allclose(g, np.eye(2), atol=1e-14)

    def test_identity(self):
        assert null_space(np.eye(3)) == []

    def test_deformed_annihilator(self):
        basis = null_space(n4_alpha(0.5).b)
        assert len(basis) == 1
        v = basis[0] / basis[0][3]
        np.testing.assert_allclose(v, [0, 0, 0, 1], atol=1e-12)

    @settings(max_examples=50)
    @given(st.integers(2, 7), st.integers(0, 6), st.integers(0, 2**32 - 1))
    def test_kernel_property(self, n, rank_drop, seed):
        rng = np.random.default_rng(seed)
        rank = max(n - rank_drop, 0)
        m = random_complex(rng, n)[:, :rank] @ random_complex(rng, n)[:rank, :]
        tol = Tolerance()
        basis = null_space(m, tol)
        assert len(basis) == n - rank
        if basis:
            v = np.array(basis).T
            np.testing.assert_allclose(v.conj().T @ v, np.eye(len(basis)), atol=1e-12)
            sigma_max = np.linalg.svd(m, compute_uv=False)[0]
            assert max_abs(m @ v) <= 10 * tol.bound(sigma_max)


class TestEigHermitian:
    def test_diagonal(self):
        w, v = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_array_equal(w, [1, 2, 3])
        np.testing.assert_allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]], atol=0)

    def test_pauli_x(self):
        w, _ = eig_hermitian(np.array([[0, 1], [1, 0]]))
        np.testing.assert_allclose(w, [-1, 1])

    def test_metric_is_positive(self, metrics_n4):
        w, _ = eig_hermitian(metrics_n4.s_phi)
        assert np.all(w > 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError, match=r"M\[0,1\]"):
            eig_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestEigGeneral:
    def test_diagonal(self):
        w, _ = eig_general(np.diag([1.5, 0.5]))
        np.testing.assert_array_equal(w, [0.5, 1.5])

    def test_nilpotent(self):
        w, _ = eig_general(np.array([[0, 1], [0, 0]]))
        np.testing.assert_array_equal(w, [0, 0])

    def test_deformed_h(self):
        from fdpb import derived_ops

        w, v = eig_general(derived_ops(n4_alpha(0.5)).h)
        np.testing.assert_allclose(w.real, [0.5, 1.5, 1.5, 2.5], atol=1e-10)
        assert np.max(np.abs(w.imag)) < 1e-10

    def test_order_real_then_imag(self):
        m = np.diag([1 + 1j, 1 - 1j, 0.5 + 3j])
        w, v = eig_general(m)
        np.testing.assert_array_equal(w, [0.5 + 3j, 1 - 1j, 1 + 1j])
        np.testing.assert_allclose(m @ v, v * w, atol=1e-14)

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_hermitian_input_real(self, n, seed):
        x = random_complex(np.random.default_rng(seed), n)
        w, v = eig_general(x + x.conj().T)
        assert np.max(np.abs(w.imag)) <= 1e-10
        np.testing.assert_allclose((x + x.conj().T) @ v, v * w, atol=1e-10)


class TestSqrtPd:
    def test_identity(self):
        np.testing.assert_allclose(sqrt_pd(np.eye(4)), np.eye(4), atol=1e-15)

    def test_diagonal(self):
        np.testing.assert_allclose(sqrt_pd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-15)

    def test_metric_root(self, metrics_n4):
        r = sqrt_pd(metrics_n4.s_psi)
        assert max_abs(r @ r - metrics_n4.s_psi) < 1e-12

    def test_inverse_root(self):
        m = np.diag([4.0, 0.25])
        np.testing.assert_allclose(sqrt_pd(m, inverse=True), np.diag([0.5, 2.0]), atol=1e-15)

    @pytest.mark.parametrize("m", [np.diag([1.0, -1.0]), np.zeros((2, 2))])
    def test_rejects_indefinite(self, m):
        with pytest.raises(NotPositiveDefiniteError, match="eigenvalue"):
            sqrt_pd(m)

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_hpd_property(self, n, seed):
        x = random_complex(np.random.default_rng(seed), n)
        m = x @ x.conj().T + 0.1 * np.eye(n)
        r = sqrt_pd(m)
        assert max_abs(r - r.conj().T) <= 1e-12
        assert max_abs(r @ r - m) <= 1e-10 * max_abs(m)
        assert np.all(np.linalg.eigvalsh(r) > 0)


class TestInverse:
    def test_diagonal(self):
        np.testing.assert_allclose(inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))

    def test_identity(self):
        np.testing.assert_array_equal(inverse(np.eye(5)), np.eye(5))

    def test_metrics_are_mutual_inverses(self, metrics_n4):
        assert max_abs(inverse(metrics_n4.s_phi) - metrics_n4.s_psi) < 1e-10

    def test_singular(self):
        with pytest.raises(SingularMatrixError, match="singular value"):
            inverse(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_rejects_non_square_and_nan():
    with pytest.raises(DimensionError):
        commutator(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(ValueError):
        inverse(np.array([[np.nan, 0], [0, 1]]))
