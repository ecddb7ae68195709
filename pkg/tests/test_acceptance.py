"""Acceptance criteria 1-12, one printed PASS/FAIL line each.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines inline,
or directly with ``python3 tests/test_acceptance.py`` for a compact report.
"""

from __future__ import annotations

import sys
import time

import pytest

from shadowsum.checks import (
    GRID,
    check_bridge,
    check_dims,
    check_examples,
    check_fusion,
    check_fusion_identity,
    check_field_identities,
    check_mixed,
    check_modular,
    check_normalization,
    check_routes,
    check_vertical,
    route_corpus,
)
from shadowsum.modular import build_modular_data

EXAMPLE_GRID = [("A1", k) for k in range(1, 7)] + [("A2", k) for k in range(1, 4)]
ROUTE_CONFIGS = [("A1", 3), ("A2", 2), ("B2", 1), ("G2", 1)]
FIELD_CONFIGS = [("A1", 3), ("A2", 2), ("B2", 1), ("G2", 1)]


def _md(case):
    return build_modular_data(*case)


def _worst(results, key):
    return max(r[key] for r in results)


def criterion_1():
    res = [check_modular(_md(c)) for c in GRID]
    dev = max(_worst(res, "s2_minus_c"), _worst(res, "st3_minus_c"))
    return all(r["pass"] for r in res), f"modular identities on {len(GRID)} grid points, max dev {dev:.2e}"


def criterion_2():
    res = [check_dims(_md(c)) for c in GRID]
    return all(r["pass"] for r in res), (
        f"S-ratio vs sine-product dimensions, max rel dev {_worst(res, 'max_relative_deviation'):.2e}"
    )


def criterion_3():
    res = [check_fusion(_md(c)) for c in GRID]
    triples = sum(r["triples"] for r in res)
    mism = sum(r["rounded_mismatches"] for r in res)
    return all(r["pass"] for r in res), (
        f"Verlinde vs Racah on {triples} triples, max dev {_worst(res, 'max_deviation'):.2e}, "
        f"{mism} rounded mismatches"
    )


def criterion_4():
    res = [check_fusion_identity(_md(c)) for c in GRID]
    return all(r["pass"] for r in res), f"fusion-matrix identity, max dev {_worst(res, 'max_deviation'):.2e}"


def _examples():
    return [check_examples(_md(c)) for c in EXAMPLE_GRID]


_example_cache: list = []


def _example_results():
    if not _example_cache:
        _example_cache.extend(_examples())
    return _example_cache


def criterion_5():
    res = _example_results()
    dev = _worst(res, "three_loops_max_relative_deviation")
    return dev < 1e-9, f"closed form on {sum(r['triples'] for r in res)} triples, max rel dev {dev:.2e}"


def criterion_6():
    res = _example_results()
    dev = _worst(res, "nested_max_relative_deviation")
    return dev < 1e-9, f"closed form on {sum(r['triples'] for r in res)} triples, max rel dev {dev:.2e}"


_route_cache: list = []


def _route_results():
    if not _route_cache:
        for seed, c in enumerate(ROUTE_CONFIGS):
            md = _md(c)
            _route_cache.append(check_routes(md, route_corpus(md, n_random=20, seed=seed)))
    return _route_cache


def criterion_7():
    res = _route_results()
    n = sum(r["links"] for r in res)
    genus1 = sum(1 for r in res for row in r["rows"] if row["genus"] == 1)
    dev = _worst(res, "max_relative_deviation")
    return n >= 20 and genus1 >= 1 and dev < 1e-9, (
        f"cs_state_sum = K^(2-2g) |X_L| on {n} links ({genus1} genus-1), max rel dev {dev:.2e}"
    )


def criterion_8():
    res = _route_results()
    norm = [check_normalization(_md(c)) for c in GRID]
    dev_n = _worst(norm, "max_deviation")
    dev_w = _worst(res, "wlo_max_relative_deviation")
    return dev_n < 1e-10 and dev_w < 1e-9, f"wlo_cs(empty) - 1 max {dev_n:.2e}; wlo_cs vs wlo_shadow max {dev_w:.2e}"


def criterion_9():
    res = []
    for c in GRID:
        genera = (0, 1, 2) if c[0] == "A1" and c[1] <= 4 else ()
        res.append(check_vertical(_md(c), genera=genera))
    d3 = _worst(res, "three_point_max_deviation")
    dg = _worst(res, "genus_formula_max_relative_deviation")
    return d3 < 1e-8 and dg < 1e-8, f"three vertical points give N within {d3:.2e}; vertical-only formula dev {dg:.2e}"


def criterion_10():
    res = [check_mixed(_md(c)) for c in GRID]
    dev = _worst(res, "max_relative_deviation")
    dv = _worst(res, "racah_vs_verlinde_deviation")
    return all(r["pass"] for r in res), (
        f"loop around a vertical point: closed form dev {dev:.2e}; Racah vs Verlinde sum dev {dv:.2e}"
    )


def criterion_11():
    res = [check_field_identities(_md(c)) for c in FIELD_CONFIGS]
    fields = sum(r["fields"] for r in res)
    ok = all(r["pass"] for r in res) and len(res) >= 3
    return ok, (
        f"step, determinant and framing identities on {fields} fields, determinant dev {_worst(res, 'determinant_deviation'):.2e}, "
        f"framing dev {_worst(res, 'framing_deviation'):.2e}; coloring bijection and alcove identity exact on "
        f"{len(res)} configurations"
    )


def criterion_12():
    res = [check_bridge(_md(c)) for c in GRID]
    return all(r["pass"] for r in res), (
        f"character vs S-ratio: positive-exponent S dev {_worst(res, 'literal_max_deviation'):.2e}, "
        f"selected S dev {_worst(res, 'selected_max_deviation'):.2e}"
    )


CRITERIA = [
    (1, "modular identities", criterion_1),
    (2, "quantum dimensions", criterion_2),
    (3, "Verlinde vs Racah", criterion_3),
    (4, "fusion-matrix identity", criterion_4),
    (5, "three unnested loops", criterion_5),
    (6, "nested loops", criterion_6),
    (7, "state sums agree", criterion_7),
    (8, "WLO normalization", criterion_8),
    (9, "vertical loops", criterion_9),
    (10, "mixed link", criterion_10),
    (11, "face-field identities", criterion_11),
    (12, "character bridge", criterion_12),
]


def _line(n, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d} {title}: {detail}"


@pytest.mark.parametrize("n, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(n, title, ok, detail))
    assert ok, detail


def main() -> int:
    start = time.time()
    failures = 0
    for n, title, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(_line(n, title, ok, detail), flush=True)
    print(f"{len(CRITERIA) - failures}/{len(CRITERIA)} criteria passed in {time.time() - start:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
