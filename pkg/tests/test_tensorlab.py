import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catclone import tensorlab as tl
from catclone.errors import NoConvergence, NotHermitian, NotUnitary

from oracles import random_hermitian

BELL_PT = 0.5 * np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def test_kron_identity():
    np.testing.assert_array_equal(tl.kron(tl.I2, tl.I2), np.eye(4))


def test_kron_xx_flips_both_bits():
    ket00 = np.array([1, 0, 0, 0], dtype=complex)
    np.testing.assert_array_equal(tl.kron(tl.X, tl.X) @ ket00, [0, 0, 0, 1])


def test_kron_index_arithmetic():
    c, s = math.cos(0.4), math.sin(0.4)
    m = tl.kron(np.diag([c, s]), tl.I2)
    assert m[0, 0] == c
    # entry (i*rb + k, j*cb + l) = a[i, j] b[k, l]
    assert m[1 * 2 + 1, 1 * 2 + 1] == s
    assert m[0 * 2 + 1, 1 * 2 + 1] == 0


@given(
    st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1)
)
def test_kron_matches_numpy(ra, ca, rb, cb, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((ra, ca)) + 1j * rng.standard_normal((ra, ca))
    b = rng.standard_normal((rb, cb)) + 1j * rng.standard_normal((rb, cb))
    np.testing.assert_array_equal(tl.kron(a, b), np.kron(a, b))


def test_unitary_constructor_rejects_non_unitary():
    tl.unitary(tl.X)
    with pytest.raises(NotUnitary):
        tl.unitary([[1, 1], [0, 1]])


def test_eigenvalues_pauli_z():
    np.testing.assert_allclose(tl.hermitian_eigenvalues(tl.Z), [-1, 1], atol=1e-15)


def test_eigenvalues_bell_partial_transpose():
    # characteristic polynomial of the hand-computed matrix is (x - 1/2)^3 (x + 1/2)
    np.testing.assert_allclose(np.poly(BELL_PT), np.poly([-0.5, 0.5, 0.5, 0.5]), atol=1e-15)
    np.testing.assert_allclose(tl.hermitian_eigenvalues(BELL_PT), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_eigenvalues_diagonal():
    a = [3.0, -1.0, 0.25, 2.0, -7.5]
    np.testing.assert_array_equal(tl.hermitian_eigenvalues(np.diag(a)), sorted(a))


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        tl.hermitian_eigenvalues([[1, 1], [0, 1]])
    # just inside the tolerance is accepted
    tl.hermitian_eigenvalues([[1, 5e-11], [0, 1]])


def test_no_convergence(monkeypatch, rng):
    monkeypatch.setattr(tl, "JACOBI_MAX_SWEEPS", 1)
    with pytest.raises(NoConvergence):
        tl.hermitian_eigenvalues(random_hermitian(8, rng))


def test_block_split_matches_dense(rng):
    h = np.zeros((6, 6), dtype=complex)
    h[np.ix_([0, 3, 5], [0, 3, 5])] = random_hermitian(3, rng)
    h[np.ix_([1, 4], [1, 4])] = random_hermitian(2, rng)
    h[2, 2] = 0.7
    np.testing.assert_allclose(tl.hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-13)


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_eigh_properties(d, seed):
    h = random_hermitian(d, np.random.default_rng(seed))
    w, v = tl.hermitian_eigh(h)
    assert np.all(np.diff(w) >= 0)
    assert abs(w.sum() - np.trace(h).real) < 1e-9
    assert np.max(np.linalg.norm(h @ v - v * w, axis=0)) < 1e-8
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-10)


@pytest.mark.parametrize("d", [32, 64])
def test_eigh_large(d, rng):
    h = random_hermitian(d, rng)
    w, v = tl.hermitian_eigh(h)
    assert abs(w.sum() - np.trace(h).real) < 1e-9
    assert np.max(np.linalg.norm(h @ v - v * w, axis=0)) < 1e-8
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-9)


def test_trace_norm_examples():
    assert tl.trace_norm(np.eye(5)) == pytest.approx(5, abs=1e-14)
    assert tl.trace_norm(BELL_PT) == pytest.approx(2, abs=1e-14)
    assert tl.trace_norm(np.zeros((3, 3))) == 0


def _random_square(d, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)), rng


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_trace_norm_dominates_trace(d, seed):
    m, _ = _random_square(d, seed)
    assert tl.trace_norm(m) >= abs(np.trace(m)) - 1e-12
    assert tl.trace_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False).sum(), rel=1e-9)


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_trace_norm_unitary_invariance(d, seed):
    from catclone.qstate import random_unitary

    m, rng = _random_square(d, seed)
    u, v = random_unitary(d, rng), random_unitary(d, rng)
    assert abs(tl.trace_norm(u @ m @ v) - tl.trace_norm(m)) < 1e-8
