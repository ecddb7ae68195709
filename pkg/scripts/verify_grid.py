"""Run every verification suite over the standard (algebra, level) grid.

Writes one JSON object per grid point to the output file (or stdout) and
prints a one-line summary per point.  Example::

    python3 scripts/verify_grid.py --out results/grid.json
    python3 scripts/verify_grid.py --only A2:1 A2:2 --suites routes mixed
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from shadowsum import build_modular_data
from shadowsum.checks import GRID, SUITES, np_free


def parse_point(text):
    name, _, level = text.partition(":")
    return name.upper(), int(level)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", type=parse_point, help="grid points as ALG:LEVEL")
    ap.add_argument("--suites", nargs="*", choices=sorted(SUITES), help="subset of suites")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)

    points = args.only or GRID
    suites = args.suites or list(SUITES)
    records = []
    all_ok = True
    for name, k in points:
        md = build_modular_data(name, k)
        t0 = time.time()
        res = {s: SUITES[s](md) for s in suites}
        ok = all(r["pass"] for r in res.values())
        all_ok &= ok
        failed = [s for s, r in res.items() if not r["pass"]]
        print(f"{name} k={k:<2d} alcove={len(md.alcove):<3d} {'ok' if ok else 'FAILED ' + ','.join(failed)}"
              f"  ({time.time() - t0:.2f} s)")
        records.append({"algebra": name, "level": k, "pass": ok, "suites": np_free(res)})
    text = json.dumps(records, indent=1, default=str)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
