"""LOCC protocols on two-copy registers: local gates, measurements, broadcast.

Party ``i`` (1-based) holds two qubits: slot ``"original"`` at global qubit
``i`` and slot ``"blank"`` at global qubit ``n + i``, so the composite input
is simply ``psi (x) blank``. A protocol is a flat list of steps; measurement
outcomes are stored in the branch transcript under the step's ``key`` and
later steps may be conditioned on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import tensorlab as tl
from .catstates import check_alpha
from .errors import BadDimension, IncompleteMeasurement, LocalityViolation
from .qstate import PureState, apply_operator, fidelity

ORIGINAL = "original"
BLANK = "blank"
ROLES = (ORIGINAL, BLANK)

COMPLETENESS_TOL = 1e-10
PROB_FLOOR = 1e-14
CLONE_TOL = 1e-9


@dataclass(frozen=True)
class Registers:
    n_parties: int

    def index(self, party: int, role: str) -> int:
        """Global 1-based qubit index of ``party``'s ``role`` slot."""
        if not 1 <= party <= self.n_parties or role not in ROLES:
            raise BadDimension(f"no slot {role!r} for party {party}")
        return party if role == ORIGINAL else self.n_parties + party

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_parties


@dataclass(frozen=True)
class Gate:
    """Unitary on ``targets``, a sequence of ``(party, role)`` slots."""

    targets: tuple
    unitary: np.ndarray = field(repr=False, compare=False)
    name: str = "U"

    @property
    def parties(self) -> set:
        return {p for p, _ in self.targets}


@dataclass(frozen=True)
class Measure:
    """Local measurement with Kraus operators ``operators`` on one slot."""

    party: int
    role: str
    operators: tuple = field(repr=False, compare=False)
    key: str = "m"
    broadcast: bool = True

    @property
    def parties(self) -> set:
        return {self.party}


@dataclass(frozen=True)
class Conditional:
    """Run ``step`` only in branches where outcome ``key`` equals ``value``."""

    key: str
    value: int
    step: Union[Gate, Measure]

    @property
    def parties(self) -> set:
        return self.step.parties


Step = Union[Gate, Measure, Conditional]


def local_gate(party: int, roles: Sequence[str], unitary, name: str = "U") -> Gate:
    return Gate(tuple((party, r) for r in roles), tl.unitary(unitary), name)


def local_cnot(party: int, source: str, target: str) -> Gate:
    return Gate(((party, source), (party, target)), tl.CNOT, "CNOT")


@dataclass
class Protocol:
    n_parties: int
    steps: list = field(default_factory=list)
    name: str = "protocol"

    @property
    def registers(self) -> Registers:
        return Registers(self.n_parties)


@dataclass(frozen=True)
class BranchOutcome:
    transcript: tuple  # ((key, outcome), ...) in measurement order
    probability: float
    state: PureState


def locality_check(protocol: Protocol) -> list[str]:
    """Describe every step that is not local to one party. Empty list means pass."""
    problems = []
    seen: dict[str, Measure] = {}
    regs = protocol.registers
    for i, step in enumerate(protocol.steps):
        where = f"step {i}"
        inner = step
        if isinstance(step, Conditional):
            m = seen.get(step.key)
            if m is None:
                problems.append(f"{where}: conditions on {step.key!r} before it is measured")
            elif not m.broadcast and step.step.parties != {m.party}:
                problems.append(
                    f"{where}: uses outcome {step.key!r} of party {m.party}, which was not broadcast"
                )
            inner = step.step
        parties = inner.parties
        if len(parties) != 1:
            problems.append(f"{where}: {_describe(inner)} acts on parties {sorted(parties)}")
            continue
        try:
            if isinstance(inner, Gate):
                for p, r in inner.targets:
                    regs.index(p, r)
            else:
                regs.index(inner.party, inner.role)
        except BadDimension as exc:
            problems.append(f"{where}: {exc}")
        if isinstance(inner, Measure):
            if isinstance(step, Measure):
                seen[inner.key] = inner
            else:
                problems.append(f"{where}: conditional measurements are not supported")
    return problems


def _describe(step) -> str:
    if isinstance(step, Gate):
        slots = " ".join(f"{p}:{r}" for p, r in step.targets)
        return f"{step.name}[{slots}]"
    if isinstance(step, Measure):
        return f"measure[{step.party}:{step.role}] -> {step.key}"
    return f"if {step.key}=={step.value}: {_describe(step.step)}"


def _check_completeness(m: Measure):
    total = sum(np.asarray(k).conj().T @ np.asarray(k) for k in m.operators)
    if np.max(np.abs(total - np.eye(2))) > COMPLETENESS_TOL:
        raise IncompleteMeasurement(f"sum of M^dag M differs from I for {m.key!r}")


def run(protocol: Protocol, psi: PureState, trace: list | None = None) -> list[BranchOutcome]:
    """Execute a protocol on ``psi``, expanding every measurement branch.

    Branches are ordered by outcome index, depth first. Branches whose
    probability falls below 1e-14 are dropped. If ``trace`` is a list, one
    text line per executed step and branch is appended to it.
    """
    problems = locality_check(protocol)
    if problems:
        raise LocalityViolation("; ".join(problems))
    regs = protocol.registers
    n = regs.n_qubits
    if psi.n_qubits != n:
        raise BadDimension(f"protocol needs {n} qubits, input has {psi.n_qubits}")
    for step in protocol.steps:
        if isinstance(step, Measure):
            _check_completeness(step)

    # each branch: (transcript, probability, normalised amplitudes)
    branches = [((), 1.0, np.array(psi.amplitudes))]
    for i, step in enumerate(protocol.steps):
        nxt = []
        for transcript, prob, amps in branches:
            outcomes = dict(transcript)
            active = step
            if isinstance(step, Conditional):
                if outcomes.get(step.key) != step.value:
                    if trace is not None:
                        trace.append(_trace_line(i, step, transcript, "skipped"))
                    nxt.append((transcript, prob, amps))
                    continue
                active = step.step
            if isinstance(active, Gate):
                targets = [regs.index(p, r) for p, r in active.targets]
                amps = apply_operator(amps, n, active.unitary, targets)
                if trace is not None:
                    trace.append(_trace_line(i, step, transcript, "applied"))
                nxt.append((transcript, prob, amps))
                continue
            target = [regs.index(active.party, active.role)]
            for k, op in enumerate(active.operators):
                out = apply_operator(amps, n, op, target)
                p_k = float(np.vdot(out, out).real)
                if trace is not None:
                    trace.append(
                        _trace_line(i, step, transcript, f"outcome={k} p={p_k:.12g}")
                    )
                if p_k < PROB_FLOOR:
                    continue
                nxt.append((transcript + ((active.key, k),), prob * p_k, out / math.sqrt(p_k)))
        branches = nxt
    return [BranchOutcome(t, p, PureState(n, a / np.linalg.norm(a))) for t, p, a in branches]


def _trace_line(i: int, step, transcript, note: str) -> str:
    party = next(iter(step.parties))
    branch = ",".join(f"{k}={v}" for k, v in transcript) or "-"
    return f"{i}\tparty={party}\t{_describe(step)}\tbranch={branch}\t{note}"


def theorem4_protocol(n: int, alpha: float) -> Protocol:
    """Clone ``{Psi_{0,t}(alpha)}`` with a GHZ blank.

    Every party copies its original qubit onto its blank qubit with a CNOT;
    party 1 measures its blank qubit with
    ``M0 = cos a|0><0| + sin a|1><1|``, ``M1 = sin a|0><0| + cos a|1><1|``
    and broadcasts ``k``; on ``k = 1`` every party flips its blank qubit.
    """
    alpha = check_alpha(alpha)
    c, s = math.cos(alpha), math.sin(alpha)
    m0 = np.diag([c, s]).astype(complex)
    m1 = np.diag([s, c]).astype(complex)
    steps: list = [local_cnot(p, ORIGINAL, BLANK) for p in range(1, n + 1)]
    steps.append(Measure(1, BLANK, (m0, m1), key="k", broadcast=True))
    steps += [Conditional("k", 1, local_gate(p, [BLANK], tl.X, "X")) for p in range(1, n + 1)]
    return Protocol(n, steps, f"theorem4(n={n}, alpha={alpha:.10g})")


def theorem5_protocol(kind: str, n: int) -> Protocol:
    """Transversal CNOTs for a GHZ pair.

    ``kind="I"`` (``GHZ+/-``): blank qubit controls original qubit.
    ``kind="II"``: original qubit controls blank qubit.
    """
    kind = kind.upper()
    if kind == "I":
        src, tgt = BLANK, ORIGINAL
    elif kind == "II":
        src, tgt = ORIGINAL, BLANK
    else:
        raise ValueError(f"unknown pair kind {kind!r}")
    return Protocol(n, [local_cnot(p, src, tgt) for p in range(1, n + 1)], f"theorem5-{kind.lower()}(n={n})")


@dataclass(frozen=True)
class MemberResult:
    state: PureState
    branches: tuple  # ((transcript, probability, fidelity), ...)

    @property
    def min_fidelity(self) -> float:
        return min(f for _, _, f in self.branches)

    @property
    def total_probability(self) -> float:
        return sum(p for _, p, _ in self.branches)


@dataclass(frozen=True)
class CloneReport:
    members: tuple
    success: bool

    @property
    def min_fidelity(self) -> float:
        return min(m.min_fidelity for m in self.members)


def clone_member(protocol: Protocol, psi: PureState, blank: PureState, trace: list | None = None) -> MemberResult:
    target = psi.tensor(psi)
    outs = run(protocol, psi.tensor(blank), trace)
    return MemberResult(psi, tuple((b.transcript, b.probability, fidelity(b.state, target)) for b in outs))


def verify_cloning(protocol: Protocol, states: Sequence[PureState], blank: PureState) -> CloneReport:
    """Run ``protocol`` on each ``psi (x) blank`` and compare every branch with ``psi (x) psi``."""
    members = tuple(clone_member(protocol, psi, blank) for psi in states)
    success = all(m.min_fidelity >= 1 - CLONE_TOL for m in members)
    return CloneReport(members, success)
