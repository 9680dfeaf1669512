import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cosserat_rayleigh.algebra import (
    char_poly,
    cubic_roots,
    det3,
    gen_eig3,
    herm_eig,
    inv3,
    mat_exp,
    solve3,
)
from cosserat_rayleigh.errors import IllConditioned, NotHermitian, Singular

entries = st.floats(-3.0, 3.0)
real3 = arrays(np.float64, (3, 3), elements=entries)


def same_multiset(a, b, atol):
    """Greedy matching; sort_complex is fragile when real parts nearly tie."""
    rest = list(b)
    for x in a:
        j = int(np.argmin([abs(x - y) for y in rest]))
        if abs(x - rest[j]) > atol:
            return False
        rest.pop(j)
    return True


@given(real3, real3)
def test_herm_eig_matches_lapack(a, b):
    h = (a + a.T) + 1j * (b - b.T)
    w, v = herm_eig(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-12)
    assert np.all(np.diff(w) >= 0)


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


@given(st.tuples(entries, entries), st.tuples(entries, entries), st.tuples(entries, entries))
def test_cubic_roots_solve_the_cubic(c2, c1, c0):
    c2, c1, c0 = (complex(*x) for x in (c2, c1, c0))
    roots = cubic_roots(c2, c1, c0)
    scale = 1 + max(abs(c2), abs(c1), abs(c0))
    for r in roots:
        assert abs(((r + c2) * r + c1) * r + c0) <= 1e-9 * scale * (1 + abs(r)) ** 3
    ref = np.roots([1, c2, c1, c0])
    assert same_multiset(roots, ref, atol=1e-5)


def test_cubic_roots_ordering_is_deterministic():
    # equal real parts tie-break by descending imaginary part
    roots = cubic_roots(0.0, 1.0, 0.0)
    assert np.allclose(roots, [1j, 0.0, -1j], atol=1e-12)
    roots = cubic_roots(-6.0, 11.0, -6.0)
    assert np.allclose(roots, [1.0, 2.0, 3.0], atol=1e-12)


@given(real3, real3)
def test_gen_eig3_residuals(a, b):
    m = a + 1j * b
    try:
        spec = gen_eig3(m)
    except IllConditioned:
        return
    assert np.max(spec.residuals(m)) <= 1e-8 * (1 + np.linalg.norm(m))
    assert same_multiset(spec.values, np.linalg.eigvals(m), atol=1e-6)


def test_gen_eig3_flags_jordan_block():
    jordan = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(IllConditioned):
        gen_eig3(jordan)


def test_char_poly_of_diagonal():
    c2, c1, c0 = char_poly(np.diag([1.0, 2.0, 3.0]))
    assert (c2, c1, c0) == pytest.approx((-6.0, 11.0, -6.0))


@given(real3, real3, st.floats(0.0, 2.0))
def test_mat_exp_matches_pade(a, b, s):
    m = a + 1j * b
    assert np.allclose(mat_exp(m, s), scipy.linalg.expm(s * m), rtol=1e-7, atol=1e-7)


def test_mat_exp_of_defective_matrix_uses_fallback():
    jordan = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.allclose(mat_exp(jordan, 0.5), scipy.linalg.expm(0.5 * jordan))


def test_mat_exp_at_zero_is_identity():
    assert np.array_equal(mat_exp(np.ones((3, 3)), 0.0), np.eye(3))


@given(real3)
def test_det3_matches_numpy(a):
    assert det3(a) == pytest.approx(np.linalg.det(a), abs=1e-10)


def test_singular_inputs_raise():
    a = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]])
    with pytest.raises(Singular):
        inv3(a)
    with pytest.raises(Singular):
        solve3(a, np.ones(3))
    with pytest.raises(Singular):
        inv3(np.zeros((3, 3)))


def test_solve3_and_inv3_agree():
    a = np.array([[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]])
    b = np.array([1.0, 2.0, 3.0])
    assert np.allclose(solve3(a, b), inv3(a) @ b)
    assert np.allclose(a @ solve3(a, b), b)
