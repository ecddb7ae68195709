"""Tabulate WLO of a fixed link as the level grows, by both routes.

The link is read from a JSON document (see scripts/links/).  Colors are
kept fixed, so the scan starts at the first level whose alcove contains them.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from shadowsum import build_modular_data, derive_shadow, parse_link
from shadowsum.cssum import wlo_cs
from shadowsum.errors import ColorNotInAlcove
from shadowsum.shadowlink import wlo_shadow


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("link", type=Path)
    ap.add_argument("--algebra", default=None)
    ap.add_argument("--max-level", type=int, default=8)
    args = ap.parse_args(argv)

    doc = json.loads(args.link.read_text())
    algebra = args.algebra or doc.get("algebra", "A1")
    sh = derive_shadow(parse_link(doc))
    print(f"{'k':>3}  {'Re WLO':>14}  {'Im WLO':>14}  {'|shadow - cs|':>13}")
    for k in range(1, args.max_level + 1):
        md = build_modular_data(algebra, k)
        try:
            a = wlo_shadow(md, sh)
        except ColorNotInAlcove:
            continue
        b = wlo_cs(sh, md)
        print(f"{k:>3}  {a.real:>14.10f}  {a.imag:>14.10f}  {abs(a - b):>13.2e}")


if __name__ == "__main__":
    main()
