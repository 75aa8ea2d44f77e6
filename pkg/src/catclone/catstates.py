"""Canonical n-qubit CAT/GHZ states and the pair classification.

A label ``(n, p, tail, alpha)`` names the state

    (cos a)^(1-p) (sin a)^p |0 t2..tn> + (-1)^p (cos a)^p (sin a)^(1-p) |1 ~t2..~tn>

with ``0 < alpha <= pi/4``; ``alpha = pi/4`` is the GHZ family. Labels print
and parse as ``p,tail@alpha`` (``0,01@0.3926990817``).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import tensorlab as tl
from .errors import BadAlpha, BadLabel, BadN, BadTail, LabelMismatch, RankTooHigh
from .qstate import Bipartition, PureState, as_cut, coefficient_matrix, entanglement_entropy

QUARTER_PI = math.pi / 4
ALPHA_TOL = 1e-12
ENTROPY_TOL = 1e-9
AMP_TOL = 1e-9

TYPE_I = "TypeI"
TYPE_II = "TypeII"
UNCLASSIFIED = "Unclassified"


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= QUARTER_PI + ALPHA_TOL):
        raise BadAlpha(f"alpha = {alpha!r} is outside (0, pi/4]")
    return min(alpha, QUARTER_PI)


_PI_EXPR = re.compile(r"^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$")


def parse_angle(text: str) -> float:
    """Radians as a decimal, or a multiple of pi such as ``pi/4`` or ``3*pi/16``."""
    text = str(text).strip().lower()
    m = _PI_EXPR.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) not in ("", ".") else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise BadLabel(f"cannot parse angle {text!r}") from None


@dataclass(frozen=True)
class CatLabel:
    n: int
    p: int
    tail: tuple
    alpha: float

    def __post_init__(self):
        if int(self.n) < 2:
            raise BadN(f"CAT states need n >= 2, got {self.n}")
        if self.p not in (0, 1):
            raise BadLabel(f"p must be a bit, got {self.p!r}")
        tail = tuple(int(b) for b in self.tail)
        if len(tail) != self.n - 1 or any(b not in (0, 1) for b in tail):
            raise BadTail(f"tail {self.tail!r} is not {self.n - 1} bits")
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    @property
    def is_ghz(self) -> bool:
        return abs(self.alpha - QUARTER_PI) <= ALPHA_TOL

    @property
    def bits(self) -> str:
        return "".join(map(str, self.tail))

    def __str__(self):
        return f"{self.p},{self.bits}@{self.alpha:.10f}"

    def with_tail(self, tail) -> CatLabel:
        return CatLabel(self.n, self.p, tuple(tail), self.alpha)

    @classmethod
    def parse(cls, text: str, alpha: float | None = None) -> CatLabel:
        """Parse ``p,tail@alpha``; ``@alpha`` may be omitted if ``alpha`` is given."""
        m = re.fullmatch(r"\s*([01])\s*,\s*([01]+)\s*(?:@\s*(.+))?", str(text))
        if not m:
            raise BadLabel(f"cannot parse label {text!r}; expected p,tail@alpha")
        if m.group(3) is not None:
            alpha = parse_angle(m.group(3))
        elif alpha is None:
            raise BadLabel(f"label {text!r} has no angle")
        tail = tuple(int(ch) for ch in m.group(2))
        return cls(len(tail) + 1, int(m.group(1)), tail, alpha)


def cat_amplitudes(label: CatLabel) -> np.ndarray:
    c, s = math.cos(label.alpha), math.sin(label.alpha)
    if label.is_ghz:
        c = s = math.sqrt(0.5)
    head = int("0" + label.bits, 2)
    tail = int("1" + "".join("1" if b == 0 else "0" for b in label.tail), 2)
    amps = np.zeros(2**label.n, dtype=complex)
    if label.p == 0:
        amps[head], amps[tail] = c, s
    else:
        amps[head], amps[tail] = s, -c
    return amps


def cat_state(label: CatLabel) -> PureState:
    return PureState(label.n, cat_amplitudes(label))


def ghz_state(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2)."""
    if int(n) < 2:
        raise BadN(f"GHZ states need n >= 2, got {n}")
    return cat_state(CatLabel(n, 0, (0,) * (n - 1), QUARTER_PI))


def max_clonable_set(n: int, alpha: float) -> list[CatLabel]:
    """All ``2**(n-1)`` labels with ``p = 0``, tails in lexicographic order."""
    if int(n) < 2:
        raise BadN(f"need n >= 2, got {n}")
    alpha = check_alpha(alpha)
    return [CatLabel(n, 0, t, alpha) for t in itertools.product((0, 1), repeat=n - 1)]


# ---------------------------------------------------------------------------
# pair classification


@dataclass(frozen=True)
class PairClass:
    """Outcome of :func:`classify_pair`.

    For a classified pair the certificate is: the single-qubit cut ``cut``,
    the common relabeling ``flips``/``signs`` (per qubit, ``Z^sign X^flip``)
    and ``b_matrix``, the second state's 2x2 coefficients in the basis
    ``{|0>,|1>}_A x {|r0>,|r1>}_B`` in which the first state reads
    ``cos a |0 r0> + sin a |1 r1>``. ``identical_side`` says which side of
    the cut carries identical marginals for a TypeII pair.
    """

    kind: str
    cut: Bipartition | None = None
    flips: tuple = ()
    signs: tuple = ()
    b_matrix: np.ndarray | None = field(default=None, repr=False, compare=False)
    identical_side: str | None = None
    # True iff certificates of the other kind were also found
    both_forms: bool = False


def _relabel_tables(n: int):
    idx = np.arange(2**n)
    popcount = np.array([bin(i).count("1") for i in range(2**n)])
    return idx, popcount


def _relabel(amps: np.ndarray, flip: int, sign: int, idx, popcount) -> np.ndarray:
    # (Z^g X^f)^{tensor n}: X moves |x> to |x ^ f>, then Z^g adds (-1)^{|x & g|}
    out = np.empty_like(amps)
    out[idx ^ flip] = amps
    return out * (1 - 2 * (popcount[idx & sign] % 2))


def _match_templates(a2, b2, k: int, n: int, c: float, s: float):
    """Check the relabeled pair against the canonical forms at cut ``{k}``.

    Returns ``(kind, b_matrix, identical_side)`` or ``None``.
    """
    bit = 1 << (n - k)
    supp = np.flatnonzero(np.abs(a2) > AMP_TOL)
    if supp.size != 2:
        return None
    i0, i1 = (supp if not supp[0] & bit else supp[::-1])
    if i0 & bit or not i1 & bit:
        return None
    phase = a2[i0] / c
    if abs(abs(phase) - 1) > AMP_TOL or abs(a2[i1] - phase * s) > AMP_TOL:
        return None
    j0, j1 = i0 ^ bit, i1 ^ bit  # |1 r0>, |0 r1>
    b_supp = np.flatnonzero(np.abs(b2) > AMP_TOL)
    bm = np.array([[b2[i0], b2[j1]], [b2[j0], b2[i1]]]) / phase
    if set(b_supp) == {int(i0), int(i1)}:
        ph = b2[i0] / s
        if abs(abs(ph) - 1) <= AMP_TOL and abs(b2[i1] + ph * c) <= AMP_TOL:
            return TYPE_I, bm, None
        return None
    if set(b_supp) == {int(j0), int(j1)}:
        on_a0, on_a1 = abs(b2[j1]), abs(b2[j0])
        if abs(on_a0 - c) <= AMP_TOL and abs(on_a1 - s) <= AMP_TOL:
            return TYPE_II, bm, "A"
        if abs(on_a0 - s) <= AMP_TOL and abs(on_a1 - c) <= AMP_TOL:
            return TYPE_II, bm, "B"
    return None


def _search(a: np.ndarray, b: np.ndarray, n: int, alpha: float) -> dict:
    """Exhaustive search over cuts and monomial relabelings; first hit per kind."""
    c, s = math.cos(alpha), math.sin(alpha)
    idx, popcount = _relabel_tables(n)
    found: dict = {}
    for k in range(1, n + 1):
        for flip in range(2**n):
            a_f = _relabel(a, flip, 0, idx, popcount)
            b_f = _relabel(b, flip, 0, idx, popcount)
            for sign in range(2**n):
                z = 1 - 2 * (popcount[idx & sign] % 2)
                hit = _match_templates(a_f * z, b_f * z, k, n, c, s)
                if hit and hit[0] not in found:
                    found[hit[0]] = (k, flip, sign) + hit[1:]
            if len(found) == 2:
                return found
    return found


def _bits(mask: int, n: int) -> tuple:
    return tuple(int(ch) for ch in format(mask, f"0{n}b"))


def classify_states(a: PureState, b: PureState, alpha: float) -> PairClass:
    """Classify two n-qubit states against the CAT pair forms at angle ``alpha``."""
    if a.n_qubits != b.n_qubits:
        raise LabelMismatch("states have different qubit counts")
    n = a.n_qubits
    found = _search(a.amplitudes, b.amplitudes, n, alpha)
    if not found:
        return PairClass(UNCLASSIFIED)
    kind = TYPE_I if TYPE_I in found else TYPE_II
    k, flip, sign, bm, side = found[kind]
    return PairClass(
        kind,
        Bipartition(n, frozenset({k})),
        _bits(flip, n),
        _bits(sign, n),
        bm,
        side,
        both_forms=len(found) == 2,
    )


def _check_pair(a: CatLabel, b: CatLabel):
    if a.n != b.n:
        raise LabelMismatch(f"labels {a} and {b} have different n")
    if abs(a.alpha - b.alpha) > ALPHA_TOL:
        raise LabelMismatch(f"labels {a} and {b} have different alpha")
    if (a.p, a.tail) == (b.p, b.tail):
        raise LabelMismatch(f"labels {a} and {b} are the same state")


def classify_pair(a: CatLabel, b: CatLabel) -> PairClass:
    """Reduce a pair of CAT labels to form I or II, or report Unclassified.

    Only defined for strict CAT states (``alpha < pi/4``).
    """
    _check_pair(a, b)
    if a.is_ghz:
        raise BadAlpha("pair classification is defined for alpha < pi/4 only")
    return classify_states(cat_state(a), cat_state(b), a.alpha)


def classification_table(n: int, alpha: float) -> list[tuple[CatLabel, CatLabel, PairClass]]:
    """Classify every unordered pair of distinct labels at ``(n, alpha)``."""
    labels = [
        CatLabel(n, p, t, alpha)
        for p in (0, 1)
        for t in itertools.product((0, 1), repeat=n - 1)
    ]
    return [(x, y, classify_pair(x, y)) for x, y in itertools.combinations(labels, 2)]


# ---------------------------------------------------------------------------
# set validation


@dataclass(frozen=True)
class SetReport:
    orthogonal: bool
    equal_entanglement: bool
    contains_type_i_pair: bool
    cardinality: int


def validate_set(labels: Sequence[CatLabel]) -> SetReport:
    labels = list(labels)
    if len(labels) < 2:
        raise LabelMismatch("a set needs at least two labels")
    n = labels[0].n
    if any(lab.n != n for lab in labels):
        raise LabelMismatch("labels in a set must share n")
    states = [cat_state(lab) for lab in labels]
    orthogonal = all(
        abs(np.vdot(x.amplitudes, y.amplitudes)) < AMP_TOL
        for x, y in itertools.combinations(states, 2)
    )
    cut = Bipartition(n, frozenset({1}))
    entropies = [entanglement_entropy(s, cut) for s in states]
    equal = (max(lab.alpha for lab in labels) - min(lab.alpha for lab in labels) <= ALPHA_TOL) and (
        max(entropies) - min(entropies) <= ENTROPY_TOL
    )
    type_i = False
    for (la, sa), (lb, sb) in itertools.combinations(zip(labels, states), 2):
        if abs(la.alpha - lb.alpha) > ALPHA_TOL or (la.p, la.tail) == (lb.p, lb.tail):
            continue
        if classify_states(sa, sb, la.alpha).kind == TYPE_I:
            type_i = True
            break
    return SetReport(orthogonal, equal, type_i, len(labels))


# ---------------------------------------------------------------------------
# bipartite reduction


@dataclass(frozen=True)
class Schmidt:
    coefficients: np.ndarray  # descending, positive
    left: np.ndarray  # columns |u_i>_A
    right: np.ndarray  # columns |v_i>_B


@dataclass(frozen=True)
class BipartiteReduction:
    """Two states written across one cut, second one in the first one's Schmidt bases.

    ``pattern`` is ``"shared"`` when ``b_in_a_basis`` is diagonal (both states
    live on the same 2-d support, the form-I shape), ``"crossed"`` when it is
    anti-diagonal (form-II shape), ``"disjoint"`` when the second state has
    weight outside ``span(u) x span(v)`` and ``"mixed"`` otherwise.
    """

    cut: Bipartition
    a: Schmidt
    b: Schmidt
    b_in_a_basis: np.ndarray
    pattern: str

    @property
    def b_coefficients(self) -> tuple:
        m = self.b_in_a_basis
        if self.pattern == "crossed":
            return (m[0, 1], m[1, 0])
        return tuple(np.diagonal(m))


SCHMIDT_TOL = 1e-10


def schmidt(psi: PureState, cut) -> Schmidt:
    """Schmidt decomposition with rank at most 2.

    Phases are fixed so the largest-magnitude entry of each left vector is
    real and positive.
    """
    m = coefficient_matrix(psi, as_cut(cut, psi.n_qubits))
    w, u = tl.hermitian_eigh(m @ m.conj().T)
    keep = np.flatnonzero(w > SCHMIDT_TOL**2)[::-1]
    if keep.size > 2:
        raise RankTooHigh(f"Schmidt rank {keep.size} exceeds 2")
    sig = np.sqrt(w[keep])
    u = u[:, keep]
    for i in range(u.shape[1]):
        j = int(np.argmax(np.abs(u[:, i])))
        u[:, i] *= abs(u[j, i]) / u[j, i]
    v = (u.conj().T @ m).T / sig
    return Schmidt(sig, u, v)


def reduce_to_bipartite(a: PureState, b: PureState, cut) -> BipartiteReduction:
    cut = as_cut(cut, a.n_qubits)
    sa, sb = schmidt(a, cut), schmidt(b, cut)
    mb = coefficient_matrix(b, cut)
    c = sa.left.conj().T @ mb @ sa.right.conj()
    small = np.abs(c) <= AMP_TOL
    if abs(np.sum(np.abs(c) ** 2) - 1.0) > AMP_TOL:
        pattern = "disjoint"
    elif np.all(small | np.eye(*c.shape, dtype=bool)):
        pattern = "shared"
    elif c.shape == (2, 2) and small[0, 0] and small[1, 1]:
        pattern = "crossed"
    else:
        pattern = "mixed"
    return BipartiteReduction(cut, sa, sb, c, pattern)
