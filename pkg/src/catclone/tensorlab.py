"""Dense complex linear algebra used by the state and witness code.

Matrices are plain ``numpy`` complex128 arrays. The only non-trivial kernel
is the Hermitian eigensolver, a cyclic Jacobi iteration. Before iterating it
splits the matrix into the connected components of its sparsity pattern, so
the very sparse partial transposes of CAT-state mixtures diagonalise as a
collection of tiny blocks instead of one 64x64 matrix.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NoConvergence, NotHermitian, NotUnitary

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def cmatrix(entries) -> np.ndarray:
    """Coerce ``entries`` to a 2-d complex array."""
    m = np.array(entries, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def cvector(entries) -> np.ndarray:
    v = np.array(entries, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {v.shape}")
    return v


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entry of ``|U^dag U - I|``."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))))


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and unitarity_defect(u) <= tol


def unitary(entries, tol: float = UNITARY_TOL) -> np.ndarray:
    """Build a unitary matrix, raising :class:`NotUnitary` if U^dag U != I."""
    u = cmatrix(entries)
    if u.shape[0] != u.shape[1] or unitarity_defect(u) > tol:
        raise NotUnitary(f"matrix of shape {u.shape} is not unitary within {tol}")
    return u


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry (i*rb + k, j*cb + l) is a[i, j] * b[k, l]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim == 1 and b.ndim == 1:
        return (a[:, None] * b[None, :]).reshape(-1)
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def _jacobi_block(a: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi on a small dense Hermitian block (modified in place)."""
    n = a.shape[0]
    v = np.eye(n, dtype=complex) if want_vectors else None
    if n == 1:
        return a.diagonal().real.copy(), v

    # absolute threshold for unit-scale matrices, relative beyond that
    tol = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))
    tiny = np.finfo(float).tiny
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.sqrt(np.sum(np.abs(a[offdiag]) ** 2)))
        if off < tol:
            return a.diagonal().real.copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tiny:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / r
                theta = (aqq - app) / (2.0 * r)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = a[:, [p, q]] @ g
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                rows = g.conj().T @ a[[p, q], :]
                a[p, :] = rows[0]
                a[q, :] = rows[1]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if v is not None:
                    vc = v[:, [p, q]] @ g
                    v[:, p] = vc[:, 0]
                    v[:, q] = vc[:, 1]
    raise NoConvergence(
        f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps on a {n}x{n} block"
    )


def _blocks(h: np.ndarray) -> list[np.ndarray]:
    """Index sets of the connected components of the nonzero pattern of ``h``."""
    pattern = csr_matrix(np.abs(h) > 0)
    count, labels = connected_components(pattern, directed=False)
    return [np.flatnonzero(labels == k) for k in range(count)]


def _check_hermitian(h) -> np.ndarray:
    h = cmatrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"non-square matrix of shape {h.shape}")
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"max |h - h^dag| = {defect:.3e} exceeds {HERMITIAN_TOL}")
    return h


def hermitian_eigh(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unit eigenvectors (columns) of a Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``max |h[i, j] - conj(h[j, i])| > 1e-10``.
    NoConvergence
        If a block fails to converge within the sweep budget.
    """
    h = _check_hermitian(h)
    h = 0.5 * (h + h.conj().T)
    n = h.shape[0]
    vals = np.empty(n)
    vecs = np.zeros((n, n), dtype=complex)
    for idx in _blocks(h):
        block = h[np.ix_(idx, idx)].copy()
        w, v = _jacobi_block(block, want_vectors=True)
        vals[idx] = w
        vecs[np.ix_(idx, idx)] = v
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]


def hermitian_eigenvalues(h) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, sorted ascending."""
    h = _check_hermitian(h)
    h = 0.5 * (h + h.conj().T)
    out = []
    for idx in _blocks(h):
        w, _ = _jacobi_block(h[np.ix_(idx, idx)].copy(), want_vectors=False)
        out.append(w)
    return np.sort(np.concatenate(out)) if out else np.empty(0)


def singular_values(m) -> np.ndarray:
    """Singular values as square roots of the eigenvalues of m^dag m (ascending)."""
    m = cmatrix(m)
    w = hermitian_eigenvalues(m.conj().T @ m)
    return np.sqrt(np.clip(w, 0.0, None))


def trace_norm(m) -> float:
    """Sum of singular values, ``tr sqrt(m^dag m)``.

    Hermitian input takes the cheaper and more accurate route through the
    absolute eigenvalues.
    """
    m = cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"trace norm needs a square matrix, got {m.shape}")
    if m.size == 0:
        return 0.0
    if hermiticity_defect(m) <= HERMITIAN_TOL:
        return float(np.sum(np.abs(hermitian_eigenvalues(m))))
    return float(np.sum(singular_values(m)))
