"""Run every reproduction scenario and write one JSON report per scenario."""

import argparse
import sys
from pathlib import Path

from entcone.reproduce import SCENARIOS, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--long", action="store_true", help="include the slow N=5 checks")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in sorted(SCENARIOS):
        report = run_scenario(name, long=args.long)
        (out / f"{name}.json").write_text(report.to_json(timings=True))
        sys.stdout.write(f"== {name}\n" + report.to_text(timings=True))
        if report.overall != "pass":
            failed.append(name)
    if failed:
        print("failed:", ", ".join(failed))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
