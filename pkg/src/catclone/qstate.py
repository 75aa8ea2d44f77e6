"""Multi-qubit pure states and density operators.

Qubits are numbered from 1 and qubit 1 is the most significant bit of the
basis index, so ``|q1 q2 ... qn>`` has index ``int("q1q2...qn", 2)``.
Parties of a protocol are identified with qubit positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import tensorlab as tl
from .errors import (
    BadCut,
    BadTargets,
    DimensionMismatch,
    NotNormalized,
    NotUnitary,
    WeightMismatch,
)

NORM_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = -1e-9


def _n_from_dim(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionMismatch(f"dimension {dim} is not 2**n for n >= 1")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalised amplitude vector over ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = tl.cvector(self.amplitudes)
        if amps.shape[0] != 2**self.n_qubits:
            raise DimensionMismatch(
                f"{amps.shape[0]} amplitudes for {self.n_qubits} qubits"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec, normalize: bool = False) -> PureState:
        vec = tl.cvector(vec)
        if normalize:
            vec = vec / np.linalg.norm(vec)
        return cls(_n_from_dim(vec.shape[0]), vec)

    @classmethod
    def basis(cls, bits: str) -> PureState:
        """Computational basis state, e.g. ``PureState.basis("010")``."""
        vec = np.zeros(2 ** len(bits), dtype=complex)
        vec[int(bits, 2)] = 1.0
        return cls(len(bits), vec)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def tensor(self, other: PureState) -> PureState:
        return PureState(self.n_qubits + other.n_qubits, tl.kron(self.amplitudes, other.amplitudes))

    def to_dict(self) -> dict:
        """Serialisable document ``{"n": ..., "amplitudes": [[re, im], ...]}``."""
        return {
            "n": self.n_qubits,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> PureState:
        amps = [complex(re, im) for re, im in doc["amplitudes"]]
        return cls(int(doc["n"]), np.array(amps, dtype=complex))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace matrix on ``n_qubits`` qubits.

    Hermiticity and trace are checked on construction; positivity needs a full
    diagonalisation and is left to :meth:`is_psd`.
    """

    n_qubits: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = tl.cmatrix(self.matrix)
        d = 2**self.n_qubits
        if m.shape != (d, d):
            raise DimensionMismatch(f"matrix shape {m.shape} for {self.n_qubits} qubits")
        if tl.hermiticity_defect(m) > tl.HERMITIAN_TOL:
            raise tl.NotHermitian("density operator is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise WeightMismatch(f"density operator has trace {tr!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return tl.hermitian_eigenvalues(self.matrix)

    def is_psd(self, tol: float = PSD_TOL) -> bool:
        return bool(self.eigenvalues()[0] >= tol)


@dataclass(frozen=True)
class Bipartition:
    """A cut of ``n`` qubits into ``side_a`` and its complement (1-based)."""

    n: int
    side_a: frozenset

    def __post_init__(self):
        side = frozenset(int(q) for q in self.side_a)
        if not side or len(side) >= self.n or not side <= set(range(1, self.n + 1)):
            raise BadCut(f"{sorted(side)} is not a nonempty proper subset of 1..{self.n}")
        object.__setattr__(self, "side_a", side)

    @property
    def side_b(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.side_a

    def __str__(self):
        a = ",".join(map(str, sorted(self.side_a)))
        b = ",".join(map(str, sorted(self.side_b)))
        return f"{{{a}}}|{{{b}}}"


def as_cut(cut, n: int) -> Bipartition:
    if isinstance(cut, Bipartition):
        if cut.n != n:
            raise BadCut(f"cut is for {cut.n} qubits, state has {n}")
        return cut
    return Bipartition(n, frozenset(cut))


def projector(psi: PureState) -> DensityOperator:
    """|psi><psi|."""
    if abs(np.linalg.norm(psi.amplitudes) - 1.0) > NORM_TOL:
        raise NotNormalized("projector needs a normalised state")
    a = psi.amplitudes
    return DensityOperator(psi.n_qubits, np.outer(a, a.conj()))


def mix(states: Sequence[PureState], weights: Sequence[float]) -> DensityOperator:
    """Convex combination ``sum_i w_i |psi_i><psi_i|``."""
    states = list(states)
    w = np.asarray(weights, dtype=float)
    if len(states) == 0 or w.shape != (len(states),):
        raise WeightMismatch(f"{len(states)} states with {w.size} weights")
    if np.any(w < 0) or abs(w.sum() - 1.0) > NORM_TOL:
        raise WeightMismatch("weights must be nonnegative and sum to 1")
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise DimensionMismatch("all states in a mixture must have the same size")
    amps = np.stack([s.amplitudes for s in states])
    m = (amps.T * w) @ amps.conj()
    return DensityOperator(n, m)


def _check_targets(n: int, targets: Sequence[int]) -> list[int]:
    targets = [int(t) for t in targets]
    if not targets or len(set(targets)) != len(targets) or any(t < 1 or t > n for t in targets):
        raise BadTargets(f"targets {targets} invalid for {n} qubits")
    return targets


def apply_operator(amplitudes: np.ndarray, n: int, op: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Apply ``op`` on ``targets`` to a raw amplitude vector (no norm checks).

    ``targets[0]`` is the most significant qubit of ``op``'s own index.
    """
    targets = _check_targets(n, targets)
    k = len(targets)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**k, 2**k):
        raise BadTargets(f"operator of shape {op.shape} acting on {k} qubits")
    axes = [t - 1 for t in targets]
    psi = np.asarray(amplitudes, dtype=complex).reshape((2,) * n)
    out = np.tensordot(op.reshape((2,) * (2 * k)), psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return out.reshape(-1)


def apply_gate(state: PureState, gate, targets: Sequence[int]) -> PureState:
    """Apply a unitary ``gate`` to the qubits listed in ``targets``."""
    gate = tl.cmatrix(gate)
    if not tl.is_unitary(gate):
        raise NotUnitary("gate is not unitary")
    amps = apply_operator(state.amplitudes, state.n_qubits, gate, targets)
    return PureState(state.n_qubits, amps / np.linalg.norm(amps))


def partial_transpose(rho: DensityOperator, cut) -> np.ndarray:
    """Transpose the indices of the qubits on side B of ``cut``."""
    n = rho.n_qubits
    cut = as_cut(cut, n)
    perm = list(range(2 * n))
    for q in cut.side_b:
        perm[q - 1], perm[n + q - 1] = perm[n + q - 1], perm[q - 1]
    t = np.asarray(rho.matrix).reshape((2,) * (2 * n)).transpose(perm)
    return t.reshape(2**n, 2**n).copy()


def negativity(rho: DensityOperator, cut) -> float:
    """``||rho^{T_B}||_1 - 1``."""
    return tl.trace_norm(partial_transpose(rho, cut)) - 1.0


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Reduced operator on ``keep``, kept qubits in ascending order."""
    n = rho.n_qubits
    keep = sorted({int(q) for q in keep})
    if not keep or any(q < 1 or q > n for q in keep):
        raise BadCut(f"cannot keep qubits {keep} of {n}")
    if len(keep) == n:
        return rho
    traced = [q for q in range(1, n + 1) if q not in keep]
    t = np.asarray(rho.matrix).reshape((2,) * (2 * n))
    # move kept row/col axes to the front, traced ones to the back
    order = [q - 1 for q in keep] + [n + q - 1 for q in keep]
    order += [q - 1 for q in traced] + [n + q - 1 for q in traced]
    k, r = len(keep), len(traced)
    t = t.transpose(order).reshape(2**k, 2**k, 2**r, 2**r)
    return DensityOperator(k, np.trace(t, axis1=2, axis2=3))


def coefficient_matrix(psi: PureState, cut) -> np.ndarray:
    """Amplitudes reshaped to ``M[a, b]`` with ``psi = sum M[a, b] |a>_A |b>_B``.

    Both sides keep their qubits in ascending order.
    """
    n = psi.n_qubits
    cut = as_cut(cut, n)
    a, b = sorted(cut.side_a), sorted(cut.side_b)
    t = psi.amplitudes.reshape((2,) * n).transpose([q - 1 for q in a + b])
    return t.reshape(2 ** len(a), 2 ** len(b))


def entropy_of(probs) -> float:
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def entanglement_entropy(psi: PureState, cut) -> float:
    """Von Neumann entropy in ebits of the reduced state on side A."""
    m = coefficient_matrix(psi, cut)
    # smaller Gram matrix has the same nonzero spectrum
    gram = m @ m.conj().T if m.shape[0] <= m.shape[1] else m.conj().T @ m
    return entropy_of(tl.hermitian_eigenvalues(gram))


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def random_state(n: int, rng: np.random.Generator) -> PureState:
    """Normalised vector of i.i.d. standard complex Gaussians."""
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(n, v / np.linalg.norm(v))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Gaussian matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d_ = np.diagonal(r)
    return q * (d_ / np.abs(d_))
