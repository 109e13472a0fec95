import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabichiral import tridiag


def _dense(d, e):
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


def test_two_by_two():
    g = 0.3
    vals = tridiag.lowest_eigenvalues([1.0, 1.0], [g], 2)
    assert vals == pytest.approx([1 - g, 1 + g], abs=1e-15)


def test_diagonal_matrix_exact():
    d = np.arange(50, dtype=float) + 0.5
    vals = tridiag.lowest_eigenvalues(d, np.zeros(49), 50)
    assert np.array_equal(vals, d)


def test_single_site():
    assert tridiag.bisect_batch([[2.5]], np.zeros((1, 0)), [0])[0] == 2.5


def test_lowest_eigenvalues_range_check():
    with pytest.raises(ValueError):
        tridiag.lowest_eigenvalues([1.0, 2.0], [0.1], 3)


@given(
    st.lists(st.floats(-5, 5), min_size=2, max_size=30).flatmap(
        lambda d: st.tuples(st.just(d), st.lists(st.floats(0.01, 3), min_size=len(d) - 1, max_size=len(d) - 1))
    )
)
def test_bisection_matches_lapack(de):
    d, e = map(np.array, de)
    ref = np.linalg.eigvalsh(_dense(d, e))
    got = tridiag.lowest_eigenvalues(d, e, len(d))
    assert np.max(np.abs(got - ref)) <= 1e-12 * max(1.0, np.abs(ref).max())


def test_sturm_count_counts():
    d = np.array([[0.0, 1.0, 2.0]])
    e2 = np.zeros((1, 2))
    c = tridiag.sturm_count(d, e2, np.array([1.5]), np.array([1e-300]))
    assert c[0] == 2


def test_solve_tridiagonal_against_numpy():
    rng = np.random.default_rng(3)
    n = 40
    sub, diag, sup, b = rng.normal(size=n - 1), rng.normal(size=n), rng.normal(size=n - 1), rng.normal(size=n)
    A = np.diag(diag) + np.diag(sub, -1) + np.diag(sup, 1)
    assert tridiag.solve_tridiagonal(sub, diag, sup, b) == pytest.approx(np.linalg.solve(A, b), abs=1e-9)


def test_inverse_iteration_orthonormal():
    rng = np.random.default_rng(5)
    d, e = rng.normal(size=25), rng.uniform(0.2, 1.0, size=24)
    vals = tridiag.lowest_eigenvalues(d, e, 4)
    vecs = []
    for lam in vals:
        v = tridiag.inverse_iteration(d, e, lam, previous=vecs)
        assert np.linalg.norm(tridiag.tridiag_matvec(d, e, v) - lam * v) < 1e-12
        assert v[np.argmax(np.abs(v))] > 0
        vecs.append(v)
    V = np.column_stack(vecs)
    assert V.T @ V == pytest.approx(np.eye(4), abs=1e-12)


def test_scalar_path_float_and_mpf():
    d, e = [1.0, 2.0, 3.0], [0.5, 0.25]
    ref = np.linalg.eigvalsh(_dense(np.array(d), np.array(e)))
    assert tridiag.bisect_scalar(d, e, 0, 1e-14) == pytest.approx(ref[0], abs=1e-13)
    with mpmath.workdps(40):
        dm, em = [mpmath.mpf(x) for x in d], [mpmath.mpf(x) for x in e]
        lam = tridiag.bisect_scalar(dm, em, 1, mpmath.mpf(10) ** -30)
        assert abs(float(lam) - ref[1]) < 1e-13
