"""Backend-parametrized tests for the QR/back-substitution kernels.

Every case runs against the pure-NumPy fallback and, when built, the
compiled core; the two must agree on pivot choices and satisfy the same
bounds.
"""

import numpy as np
import pytest

from eigroots.kernels import available_backends

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def run_qr(backend, a, pivoting=True, want_q=True, carry=None):
    r = np.array(a, dtype=np.float64, order="C", copy=True)
    b = np.empty((r.shape[0], 0)) if carry is None else np.array(carry, dtype=np.float64, order="C", copy=True)
    perm, q = backend.qr_inplace(r, b, pivoting, want_q)
    return r, perm, q, b


class TestPivotedQR:
    def test_identity(self, backend):
        r, perm, q, _ = run_qr(backend, np.eye(3))
        assert perm.tolist() == [0, 1, 2]
        assert np.array_equal(r, np.eye(3))
        assert np.array_equal(q, np.eye(3))

    def test_column_swap_example(self, backend):
        r, perm, q, _ = run_qr(backend, np.array([[0.0, 2.0], [0.0, 0.0]]))
        assert perm.tolist() == [1, 0]
        assert abs(r[0, 0]) == 2.0

    def test_tie_breaks_to_lowest_index(self, backend):
        a = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        _, perm, _, _ = run_qr(backend, a)
        assert perm[0] == 0

    @pytest.mark.parametrize("seed,shape", [(0, (20, 12)), (1, (12, 20)), (2, (50, 50)), (3, (7, 3))])
    def test_reconstruction_and_orthogonality(self, backend, seed, shape):
        a = np.random.default_rng(seed).standard_normal(shape)
        r, perm, q, _ = run_qr(backend, a)
        m = shape[0]
        assert np.linalg.norm(q.T @ q - np.eye(m)) <= 1e-12 * m
        assert np.linalg.norm(a[:, perm] - q @ r) <= 1e-12 * np.linalg.norm(a)
        assert np.allclose(np.tril(r, -1), 0.0)

    @pytest.mark.parametrize("seed", range(8))
    def test_diagonal_magnitudes_non_increasing(self, backend, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((int(rng.integers(2, 60)), int(rng.integers(2, 40))))
        r, _, _, _ = run_qr(backend, a, want_q=False)
        d = np.abs(np.diagonal(r))
        assert np.all(d[:-1] >= d[1:])

    def test_norm_downdating_recompute_path(self, backend):
        # nearly rank-one input forces massive cancellation in the norm
        # downdates, exercising the recomputation guard
        rng = np.random.default_rng(42)
        a = np.outer(rng.standard_normal(30), rng.standard_normal(10))
        a += 1e-9 * rng.standard_normal(a.shape)
        r, perm, q, _ = run_qr(backend, a)
        assert np.linalg.norm(a[:, perm] - q @ r) <= 1e-12 * np.linalg.norm(a)
        d = np.abs(np.diagonal(r))
        assert np.all(d[:-1] >= d[1:])

    def test_matches_brute_force_pivot_order(self, backend):
        # oracle: recompute every remaining column norm from scratch each step
        rng = np.random.default_rng(17)
        a = rng.standard_normal((25, 15))
        _, perm, _, _ = run_qr(backend, a, want_q=False)

        work = a.copy()
        expected = []
        cols = list(range(15))
        for k in range(15):
            norms = [np.linalg.norm(work[k:, j]) for j in range(k, 15)]
            pick = k + int(np.argmax(norms))
            work[:, [k, pick]] = work[:, [pick, k]]
            cols[k], cols[pick] = cols[pick], cols[k]
            expected.append(cols[k])
            x = work[k:, k]
            v = x.copy()
            v[0] -= -np.sign(x[0]) * np.linalg.norm(x) if x[0] != 0 else -np.linalg.norm(x)
            denom = v @ v
            if denom > 0:
                work[k:, :] -= np.outer(2.0 * v / denom, v @ work[k:, :])
        assert perm.tolist() == expected


class TestPlainQR:
    def test_identity(self, backend):
        r, perm, q, _ = run_qr(backend, np.eye(3), pivoting=False)
        assert perm.tolist() == [0, 1, 2]
        assert np.array_equal(q, np.eye(3))
        assert np.array_equal(r, np.eye(3))

    def test_single_column_norm(self, backend):
        r, _, q, _ = run_qr(backend, np.array([[3.0], [4.0]]), pivoting=False)
        assert abs(r[0, 0]) == pytest.approx(5.0, abs=1e-14)
        assert abs(r[1, 0]) == 0.0

    def test_reconstruction(self, backend):
        a = np.random.default_rng(9).standard_normal((30, 10))
        r, _, q, _ = run_qr(backend, a, pivoting=False)
        assert np.linalg.norm(a - q @ r) <= 1e-12 * np.linalg.norm(a)

    def test_carry_equals_qt_b(self, backend):
        rng = np.random.default_rng(33)
        a = rng.standard_normal((18, 6))
        b = rng.standard_normal((18, 9))
        _, _, q, carried = run_qr(backend, a, pivoting=False, carry=b)
        assert np.allclose(carried, q.T @ b, atol=1e-12)


class TestBackSubstitution:
    def test_identity(self, backend):
        x = np.array([[1.0, 2.0], [3.0, 4.0]], order="C")
        backend.solve_upper_inplace(np.eye(2), x)
        assert np.array_equal(x, [[1.0, 2.0], [3.0, 4.0]])

    def test_hand_solved(self, backend):
        u = np.array([[2.0, 1.0], [0.0, 4.0]], order="C")
        x = np.array([[5.0], [8.0]], order="C")
        backend.solve_upper_inplace(u, x)
        assert np.allclose(x[:, 0], [1.5, 2.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_roundtrip(self, backend, seed):
        rng = np.random.default_rng(seed)
        u = np.triu(rng.standard_normal((12, 12))) + 3 * np.eye(12)
        b = rng.standard_normal((12, 4))
        x = np.array(b, order="C", copy=True)
        backend.solve_upper_inplace(np.ascontiguousarray(u), x)
        cond = np.linalg.cond(u)
        assert np.linalg.norm(u @ x - b) <= 1e-10 * cond * np.linalg.norm(b)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
class TestBackendAgreement:
    @pytest.mark.parametrize("seed,shape", [(0, (15, 10)), (1, (40, 25)), (2, (10, 30))])
    def test_same_pivots_and_factors(self, seed, shape):
        a = np.random.default_rng(seed).standard_normal(shape)
        results = {}
        for name, mod in BACKENDS.items():
            r = np.array(a, order="C", copy=True)
            perm, q = mod.qr_inplace(r, np.empty((shape[0], 0)), True, True)
            results[name] = (perm, r, q)
        p0, r0, q0 = results["python"]
        p1, r1, q1 = results["compiled"]
        assert p0.tolist() == p1.tolist()
        assert np.allclose(r0, r1, atol=1e-12 * np.linalg.norm(a))
        assert np.allclose(q0, q1, atol=1e-12)

    def test_same_triangular_solve(self):
        rng = np.random.default_rng(5)
        u = np.triu(rng.standard_normal((9, 9))) + 2 * np.eye(9)
        b = rng.standard_normal((9, 3))
        outs = []
        for mod in BACKENDS.values():
            x = np.array(b, order="C", copy=True)
            mod.solve_upper_inplace(np.ascontiguousarray(u), x)
            outs.append(x)
        assert np.allclose(outs[0], outs[1], atol=1e-13)
