"""Command-line front end: ``catclone <command> [flags]``.

Exit status is 0 on success, 2 for invalid flags or labels and 1 for
anything unexpected. Reports go to stdout as JSON, sweeps as CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import catstates as cs
from . import locc, witness
from .errors import BadLabel, CatCloneError
from .qstate import Bipartition, entanglement_entropy, random_state

OUT_DIR_ENV = "CATCLONE_OUT_DIR"


def _angle(text: str) -> float:
    try:
        return cs.parse_angle(text)
    except CatCloneError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _labels(texts, alpha):
    return [cs.CatLabel.parse(t, alpha) for t in texts]


def _matrix_json(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def resolve_output(path: str) -> Path:
    """Relative paths land in ``$CATCLONE_OUT_DIR`` when it is set."""
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def cmd_sweep(args) -> int:
    rows = witness.sweep(args.alpha_min, args.alpha_max, args.steps, numeric=not args.closed_form)
    text = witness.sweep_csv(rows)
    if args.out in (None, "-", "stdout"):
        sys.stdout.write(text)
    else:
        resolve_output(args.out).write_text(text)
    return 0


def cmd_witness(args) -> int:
    labels = _labels(args.set, args.alpha)
    n = labels[0].n
    if args.blank.lower() == "ghz":
        blank = cs.ghz_state(n)
    else:
        blank = cs.cat_state(cs.CatLabel.parse(args.blank, args.alpha))
    alphas = {lab.alpha for lab in labels}
    report = witness.witness_set(
        [cs.cat_state(lab) for lab in labels], blank, alphas.pop() if len(alphas) == 1 else None
    )
    doc = report.to_dict()
    if args.json:
        _emit(doc)
    else:
        for rec in doc["cuts"]:
            print(f"cut {rec['cut']}: n_in={rec['n_in']:.12g} n_out={rec['n_out']:.12g}")
        print(f"verdict: {doc['verdict']}")
    return 0


def _pair_doc(a, b, pc: cs.PairClass) -> dict:
    return {
        "a": str(a),
        "b": str(b),
        "kind": pc.kind,
        "cut": sorted(pc.cut.side_a) if pc.cut else None,
        "flips": list(pc.flips),
        "signs": list(pc.signs),
        "identical_side": pc.identical_side,
        "both_forms": pc.both_forms,
        "b_matrix": _matrix_json(pc.b_matrix) if pc.b_matrix is not None else None,
    }


def cmd_classify(args) -> int:
    if args.table:
        if args.n is None or args.alpha is None:
            raise BadLabel("--table needs --n and --alpha")
        rows = cs.classification_table(args.n, args.alpha)
        _emit({"n": args.n, "alpha": args.alpha, "pairs": [_pair_doc(a, b, pc) for a, b, pc in rows]})
        return 0
    if not args.pair:
        raise BadLabel("give --pair A B or --table")
    a, b = _labels(args.pair, args.alpha)
    _emit(_pair_doc(a, b, cs.classify_pair(a, b)))
    return 0


def cmd_validate_set(args) -> int:
    rep = cs.validate_set(_labels(args.set, args.alpha))
    _emit(
        {
            "orthogonal": rep.orthogonal,
            "equal_entanglement": rep.equal_entanglement,
            "contains_type_i_pair": rep.contains_type_i_pair,
            "cardinality": rep.cardinality,
        }
    )
    return 0


def cmd_clone(args) -> int:
    if args.protocol == "theorem4":
        if args.alpha is None:
            raise BadLabel("theorem4 needs --alpha")
        label = cs.CatLabel.parse(args.state, args.alpha)
        protocol = locc.theorem4_protocol(label.n, label.alpha)
    else:
        # GHZ pairs live at alpha = pi/4
        label = cs.CatLabel.parse(args.state, math.pi / 4)
        protocol = locc.theorem5_protocol(args.protocol.split("-")[1], label.n)
    if args.n is not None and args.n != label.n:
        raise BadLabel(f"label {args.state!r} has {label.n} qubits, --n is {args.n}")
    trace = [] if args.trace else None
    res = locc.clone_member(protocol, cs.cat_state(label), cs.ghz_state(label.n), trace)
    _emit(
        {
            "protocol": protocol.name,
            "state": str(label),
            "branches": [
                {"transcript": dict(t), "probability": p, "fidelity": f} for t, p, f in res.branches
            ],
            "min_fidelity": res.min_fidelity,
            "cloned": res.min_fidelity >= 1 - locc.CLONE_TOL,
        }
    )
    if trace is not None:
        print("\n".join(trace), file=sys.stderr)
    return 0


def cmd_convertibility(args) -> int:
    psi, phi = witness.form_i_pair(args.alpha)
    u = witness.convertibility(psi, phi)
    cross = witness.crossed_pair(args.alpha)
    _emit(
        {
            "alpha": args.alpha,
            "unitary": _matrix_json(u) if u is not None else None,
            "form_i_relation": witness.unitary_relation_check([psi, phi]),
            "form_ii_relation": witness.unitary_relation_check(list(cross)),
        }
    )
    return 0


def cmd_entropy_bound(args) -> int:
    """Largest single-qubit-cut entropy over seeded random states."""
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        psi = random_state(args.n, rng)
        for q in range(1, args.n + 1):
            worst = max(worst, entanglement_entropy(psi, Bipartition(args.n, frozenset({q}))))
    _emit({"n": args.n, "samples": args.samples, "seed": args.seed, "max_entropy": worst})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catclone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="negativity curves as CSV")
    p.add_argument("--alpha-min", type=_angle, default=0.01)
    p.add_argument("--alpha-max", type=_angle, default=math.pi / 4)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--out", default=None, help="output path, or - for stdout")
    p.add_argument("--closed-form", action="store_true", help="evaluate formulas instead of density operators")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="negativity witness for a set of labels")
    p.add_argument("--set", nargs="+", required=True, metavar="LABEL")
    p.add_argument("--blank", default="ghz", help="label or 'ghz'")
    p.add_argument("--alpha", type=_angle, default=None, help="angle for labels without @alpha")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("classify", help="classify a pair of labels as form I or II")
    p.add_argument("--pair", nargs=2, metavar="LABEL")
    # the pair type does not depend on alpha inside (0, pi/4)
    p.add_argument("--alpha", type=_angle, default=math.pi / 8)
    p.add_argument("--table", action="store_true", help="classify every pair at --n, --alpha")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("validate-set", help="orthogonality, entanglement and pair checks")
    p.add_argument("--set", nargs="+", required=True, metavar="LABEL")
    p.add_argument("--alpha", type=_angle, default=None)
    p.set_defaults(func=cmd_validate_set)

    p = sub.add_parser("clone", help="run a cloning protocol on one label")
    p.add_argument("--protocol", choices=["theorem4", "theorem5-i", "theorem5-ii"], required=True)
    p.add_argument("--state", required=True, metavar="LABEL")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--alpha", type=_angle, default=None)
    p.add_argument("--trace", action="store_true", help="write the step log to stderr")
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("convertibility", help="one-sided unitary between the two-qubit pairs")
    p.add_argument("--alpha", type=_angle, required=True)
    p.set_defaults(func=cmd_convertibility)

    p = sub.add_parser("entropy-bound", help="max single-qubit-cut entropy of random states")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_entropy_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CatCloneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
