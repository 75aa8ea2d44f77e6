"""Run the explicit cloning protocols and the negativity witness side by side."""

import math

from catclone.catstates import CatLabel, cat_state, ghz_state, max_clonable_set
from catclone.locc import theorem4_protocol, theorem5_protocol, verify_cloning
from catclone.witness import witness_set

Q = math.pi / 4


def show(name, protocol, states, blank):
    rep = verify_cloning(protocol, states, blank)
    wit = witness_set(states, blank)
    print(f"{name:<44} cloned={str(rep.success):<5} min F={rep.min_fidelity:.6f}  witness={wit.verdict}")


def main():
    for n in (2, 3, 4):
        for alpha in (0.1, 0.3, Q):
            states = [cat_state(lab) for lab in max_clonable_set(n, alpha)]
            show(f"max set n={n} alpha={alpha:.4f}", theorem4_protocol(n, alpha), states, ghz_state(n))

    n, alpha = 3, 0.3
    pair = [cat_state(CatLabel.parse(t, alpha)) for t in ("0,00", "1,00")]
    show("form I pair, CAT blank", theorem4_protocol(n, alpha), pair, cat_state(CatLabel.parse("0,00", alpha)))
    show("form I pair, GHZ blank", theorem4_protocol(n, alpha), pair, ghz_state(n))

    for n in (2, 4, 6):
        plus = ghz_state(n)
        minus = cat_state(CatLabel(n, 1, (0,) * (n - 1), Q))
        show(f"GHZ+/- pair n={n}", theorem5_protocol("I", n), [plus, minus], plus)

    three = [cat_state(CatLabel.parse(t, Q)) for t in ("0,00", "0,10", "1,00")]
    show("three GHZ states (pair I protocol)", theorem5_protocol("I", 3), three, ghz_state(3))


if __name__ == "__main__":
    main()
