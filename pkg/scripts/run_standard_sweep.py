"""Run the shipped standard sweep and print per-theorem verdict counts.

    python3 scripts/run_standard_sweep.py --out reports.json
"""

import argparse
import collections
import time

from fracineq.sweep import SweepRunner, SweepSpec, dumps_reports, summarize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sweep", default=None, help="SweepSpec JSON (default: the standard sweep)")
    ap.add_argument("--out", default=None, help="write the JSON reports here")
    args = ap.parse_args()

    spec = SweepSpec.load(args.sweep) if args.sweep else SweepSpec.standard()
    t0 = time.perf_counter()
    reports = SweepRunner(spec).run()
    dt = time.perf_counter() - t0

    table = collections.defaultdict(collections.Counter)
    for r in reports:
        table[r.theorem_id][r.verdict] += 1
    print(f"{'theorem':<15}{'holds':>8}{'violated':>10}{'indet.':>8}")
    for tid in spec.theorem_ids:
        c = table[tid]
        print(f"{tid:<15}{c['holds']:>8}{c['violated']:>10}{c['indeterminate']:>8}")
    print(f"total {len(reports)} reports in {dt:.1f} s: {summarize(reports)}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps_reports(reports))


if __name__ == "__main__":
    main()
