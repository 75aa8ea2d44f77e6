"""Negativity witnesses against LOCC cloning.

A cloner that maps ``psi_j (x) blank`` to ``psi_j (x) psi_j`` for every
member of a set also maps the uniform mixtures ``rho_in -> rho_out``. If the
negativity of ``rho_out`` exceeds that of ``rho_in`` across any cut that
keeps each party's two qubits together, no LOCC cloner exists. The converse
does not hold: an ``Inconclusive`` verdict says nothing about possibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import bisect

from . import tensorlab as tl
from .catstates import CatLabel, cat_state, check_alpha
from .errors import BadAlpha, BadRange, DimensionMismatch, SingularCoefficients
from .qstate import Bipartition, DensityOperator, PureState, mix, negativity

VERDICT_TOL = 1e-9
UNITARY_CHECK_TOL = 1e-9
SINGULAR_TOL = 1e-12

IMPOSSIBLE = "Impossible"
INCONCLUSIVE = "Inconclusive"


def _check_members(states: Sequence[PureState]) -> int:
    states = list(states)
    if not states:
        raise DimensionMismatch("empty set")
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise DimensionMismatch("set members have different sizes")
    return n


def build_rho_in(states: Sequence[PureState], blank: PureState) -> DensityOperator:
    """Uniform mixture of ``psi_j (x) blank``."""
    n = _check_members(states)
    if blank.n_qubits != n:
        raise DimensionMismatch(f"blank has {blank.n_qubits} qubits, members have {n}")
    w = np.full(len(states), 1.0 / len(states))
    return mix([s.tensor(blank) for s in states], w)


def build_rho_out(states: Sequence[PureState], blank: PureState | None = None) -> DensityOperator:
    """Uniform mixture of ``psi_j (x) psi_j``; ``blank`` only checks sizes."""
    n = _check_members(states)
    if blank is not None and blank.n_qubits != n:
        raise DimensionMismatch(f"blank has {blank.n_qubits} qubits, members have {n}")
    w = np.full(len(states), 1.0 / len(states))
    return mix([s.tensor(s) for s in states], w)


def party_cut(n: int, party: int) -> Bipartition:
    """Party ``party``'s original and blank qubits versus everything else."""
    return Bipartition(2 * n, frozenset({party, n + party}))


@dataclass(frozen=True)
class CutRecord:
    cut: Bipartition
    n_in: float
    n_out: float


@dataclass(frozen=True)
class WitnessReport:
    alpha: float | None
    cuts: tuple
    verdict: str

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "cuts": [
                {"cut": sorted(r.cut.side_a), "n_in": r.n_in, "n_out": r.n_out}
                for r in self.cuts
            ],
            "verdict": self.verdict,
        }


def witness_set(states: Sequence[PureState], blank: PureState, alpha: float | None = None) -> WitnessReport:
    """Compare ``N(rho_in)`` and ``N(rho_out)`` across every party cut."""
    n = _check_members(states)
    rho_in = build_rho_in(states, blank)
    rho_out = build_rho_out(states, blank)
    records = []
    for party in range(1, n + 1):
        cut = party_cut(n, party)
        records.append(CutRecord(cut, negativity(rho_in, cut), negativity(rho_out, cut)))
    impossible = any(r.n_out > r.n_in + VERDICT_TOL for r in records)
    return WitnessReport(alpha, tuple(records), IMPOSSIBLE if impossible else INCONCLUSIVE)


def witness_pair(a: PureState, b: PureState, blank: PureState, alpha: float | None = None) -> WitnessReport:
    if abs(np.vdot(a.amplitudes, b.amplitudes)) > 1e-9:
        raise DimensionMismatch("witness_pair needs orthogonal states")
    return witness_set([a, b], blank, alpha)


# ---------------------------------------------------------------------------
# closed forms and the threshold


def closed_form(alpha: float, case: str) -> tuple[float, float]:
    """``(N(rho_in), N(rho_out))`` for the reduced pair of form I or II with a same-angle blank."""
    alpha = check_alpha(alpha)
    s2, c2 = math.sin(2 * alpha), math.cos(2 * alpha)
    case = case.upper()
    if case == "I":
        return s2, s2 * (s2 + 2 * c2)
    if case == "II":
        return s2, math.sqrt(s2 * s2 * (2 - s2 * s2))
    raise ValueError(f"unknown case {case!r}")


def threshold_alpha() -> float:
    """Smallest alpha where the form-I output negativity reaches 1."""
    return 0.5 * math.asin(1 / math.sqrt(5))


def threshold_by_bisection(xtol: float = 1e-12) -> float:
    """Root of ``N_out(alpha) - 1`` for form I, found by bisection on [0.01, 0.5]."""
    return bisect(lambda a: closed_form(a, "I")[1] - 1.0, 0.01, 0.5, xtol=xtol)


# ---------------------------------------------------------------------------
# numeric curves

CANONICAL_PAIRS = {
    "I": ("0,00", "1,00"),
    "II": ("0,00", "0,11"),
}


def canonical_pair(case: str, alpha: float) -> tuple[PureState, PureState]:
    """Three-qubit pair whose party-1 cut reduces exactly to form I or II."""
    x, y = CANONICAL_PAIRS[case.upper()]
    return cat_state(CatLabel.parse(x, alpha)), cat_state(CatLabel.parse(y, alpha))


def numeric_negativities(alpha: float, case: str) -> tuple[float, float]:
    """``(N(rho_in), N(rho_out))`` across party 1's cut, from the built density operators."""
    alpha = check_alpha(alpha)
    a, b = canonical_pair(case, alpha)
    blank = cat_state(CatLabel.parse("0,00", alpha))
    cut = party_cut(3, 1)
    return (
        negativity(build_rho_in([a, b], blank), cut),
        negativity(build_rho_out([a, b], blank), cut),
    )


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    n_in: float
    n_out_case_i: float
    n_out_case_ii: float

    def csv(self) -> str:
        return ",".join(f"{v:.12g}" for v in (self.alpha, self.n_in, self.n_out_case_i, self.n_out_case_ii))


CSV_HEADER = "alpha,n_in,n_out_case_i,n_out_case_ii"


@dataclass(frozen=True)
class SweepConfig:
    alpha_min: float = 0.01
    alpha_max: float = math.pi / 4
    steps: int = 200
    numeric: bool = True

    def grid(self) -> np.ndarray:
        if not (0 < self.alpha_min < self.alpha_max <= math.pi / 4 + 1e-12) or self.steps < 2:
            raise BadRange(
                f"need 0 < alpha_min < alpha_max <= pi/4 and steps >= 2, got "
                f"({self.alpha_min}, {self.alpha_max}, {self.steps})"
            )
        return np.linspace(self.alpha_min, min(self.alpha_max, math.pi / 4), self.steps)


def sweep_row(alpha: float, numeric: bool = True) -> SweepRow:
    if numeric:
        n_in, out_i = numeric_negativities(alpha, "I")
        _, out_ii = numeric_negativities(alpha, "II")
    else:
        n_in, out_i = closed_form(alpha, "I")
        out_ii = closed_form(alpha, "II")[1]
    return SweepRow(float(alpha), n_in, out_i, out_ii)


def sweep(alpha_min: float = 0.01, alpha_max: float = math.pi / 4, steps: int = 200, numeric: bool = True) -> list[SweepRow]:
    """Negativity curves on a uniform alpha grid, endpoints included."""
    cfg = SweepConfig(alpha_min, alpha_max, steps, numeric)
    return [sweep_row(a, cfg.numeric) for a in cfg.grid()]


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    return "\n".join([CSV_HEADER, *(r.csv() for r in rows)]) + "\n"


# ---------------------------------------------------------------------------
# local unitary convertibility of two-qubit states


def two_qubit_coefficients(psi: PureState) -> np.ndarray:
    if psi.n_qubits != 2:
        raise DimensionMismatch("convertibility is defined for two-qubit states")
    return np.asarray(psi.amplitudes).reshape(2, 2)


def convertibility(psi: PureState, phi: PureState, side: int = 1) -> np.ndarray | None:
    """Unitary ``U`` with ``(U (x) I) psi = phi`` (``side=1``) or ``(I (x) U) psi = phi`` (``side=2``).

    ``U`` is computed from the coefficient matrices, ``U = M_phi M_psi^-1``
    (transposed for side 2), and returned only if it is unitary within 1e-9.
    """
    m_psi = two_qubit_coefficients(psi)
    m_phi = two_qubit_coefficients(phi)
    if abs(np.linalg.det(m_psi)) <= SINGULAR_TOL:
        raise SingularCoefficients("coefficient matrix of psi is singular")
    if side == 1:
        u = m_phi @ np.linalg.inv(m_psi)
    elif side == 2:
        u = (np.linalg.inv(m_psi) @ m_phi).T
    else:
        raise ValueError(f"side must be 1 or 2, got {side}")
    return u if tl.unitarity_defect(u) <= UNITARY_CHECK_TOL else None


def unitary_relation_check(states: Sequence[PureState]) -> bool:
    """True iff every state is a one-sided unitary image of the first.

    The unitaries must all act on the same side; either side is tried.
    """
    states = list(states)
    if len(states) < 2:
        return True
    first, rest = states[0], states[1:]
    return any(
        all(convertibility(first, other, side) is not None for other in rest) for side in (1, 2)
    )


def form_i_pair(alpha: float) -> tuple[PureState, PureState]:
    """``cos a|00> + sin a|11>`` and ``sin a|00> - cos a|11>``."""
    if not 0 < alpha <= math.pi / 4 + 1e-12:
        raise BadAlpha(f"alpha = {alpha!r} is outside (0, pi/4]")
    c, s = math.cos(alpha), math.sin(alpha)
    return (
        PureState(2, np.array([c, 0, 0, s], dtype=complex)),
        PureState(2, np.array([s, 0, 0, -c], dtype=complex)),
    )


def crossed_pair(alpha: float) -> tuple[PureState, PureState]:
    """``cos a|00> + sin a|11>`` and ``cos a|01> + sin a|10>``."""
    c, s = math.cos(alpha), math.sin(alpha)
    return (
        PureState(2, np.array([c, 0, 0, s], dtype=complex)),
        PureState(2, np.array([0, c, s, 0], dtype=complex)),
    )
