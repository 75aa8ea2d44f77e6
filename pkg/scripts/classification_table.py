"""Print the pair classification table for all canonical labels at n qubits."""

import argparse
from collections import Counter

from catclone.catstates import classification_table, parse_angle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--alpha", type=parse_angle, default=0.3)
    args = ap.parse_args()

    rows = classification_table(args.n, args.alpha)
    print(f"{'a':>6} {'b':>6}  {'relation':<10} {'kind':<13} cut   same side")
    for a, b, pc in rows:
        tail_a = "".join(map(str, a.tail))
        tail_b = "".join(map(str, b.tail))
        relation = "p-flip" if a.tail == b.tail else ("same p" if a.p == b.p else "mixed")
        cut = ",".join(map(str, sorted(pc.cut.side_a))) if pc.cut else "-"
        print(f"{str(a.p) + ',' + tail_a:>6} {str(b.p) + ',' + tail_b:>6}  {relation:<10} {pc.kind:<13} {cut:<5} {pc.identical_side or '-'}")
    counts = Counter(pc.kind for _, _, pc in rows)
    both = sum(pc.both_forms for _, _, pc in rows)
    print(f"\n{dict(counts)}; pairs matching both forms: {both}")


if __name__ == "__main__":
    main()
