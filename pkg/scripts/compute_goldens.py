"""Freeze golden point counts after the brute-force oracle agrees.

    python scripts/compute_goldens.py [--out DIR]

For each curve the fast vectorized counter and the table-lookup oracle must
give identical N_1..N_n; the genus-2 curve is further checked against its
hyperelliptic model.  Nothing is written on disagreement.
"""

import argparse
import sys
from pathlib import Path

from char3curves.astower.tower import load_curve
from char3curves.cartier import parse_hyperelliptic
from char3curves.oracles import hyperelliptic_count, tower_counts
from char3curves.zeta import point_counts, write_golden

DATA = Path(__file__).resolve().parents[1] / "src" / "char3curves" / "data"

JOBS = [
    # golden file, curve, params, number of counts
    ("genus10.txt", "genus10.curve", None, 10),
    ("genus2_c1.txt", "genus2.curve", {"c": 1}, 5),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA / "golden")
    args = ap.parse_args()
    ok = True
    for name, curve, params, n in JOBS:
        t = load_curve(DATA / "curves" / curve, params)
        fast = point_counts(t, n)
        brute = tower_counts(t, n)
        agree = fast == brute
        if curve == "genus2.curve":
            f = parse_hyperelliptic("c*X^6+X^4+X^2+1", params["c"])
            agree = agree and brute == [hyperelliptic_count(f, k) for k in range(1, n + 1)]
        print(f"{name}: fast {fast}")
        print(f"{' ' * len(name)}  oracle {brute} -> {'agree' if agree else 'DISAGREE'}")
        if not agree:
            ok = False
            continue
        label = f"{curve} with {params}" if params else curve
        header = f"{label}\nfrozen after fast counter and brute-force oracle agreed"
        write_golden(args.out / name, fast, header)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
