"""Run the claims catalog and write a JSON report with a status summary.

    python scripts/run_claims.py [--out report.json] [--workers N] [--presentation NAME=FILE ...]

Order-243 claims stay INCONCLUSIVE unless a presentation for the named
group is supplied.
"""

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from char3curves.claims import RunConfig, exit_code, run_claims


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("claims_report.json"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--presentation", action="append", default=[], metavar="NAME=FILE")
    args = ap.parse_args()

    pres = dict(item.split("=", 1) for item in args.presentation)
    results = run_claims(config=RunConfig(workers=args.workers, presentations=pres))
    summary = Counter(r.status for r in results)
    report = {"summary": dict(sorted(summary.items())), "claims": [r.to_json() for r in results]}
    args.out.write_text(json.dumps(report, indent=2) + "\n")

    for r in results:
        if r.status != "VERIFIED":
            print(f"{r.status:13s} {r.id}  {r.note}".rstrip())
    print(", ".join(f"{k} {v}" for k, v in report["summary"].items()), f"-> {args.out}")
    return exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
