"""Verification suites shared by the CLI ``verify`` command, the tests and the scripts.

Every suite returns a plain dict with a boolean ``pass`` and the measured
deviation(s), so results serialize directly to JSON.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .cssum import (
    cs_state_sum,
    constants,
    coloring_bijection,
    face_field,
    field_identities,
    wlo_cs,
)
from .modular import (
    ModularData,
    fusion_matrix_identity_check,
    modular_identity_report,
    s_matrix,
    sin_product,
)
from .qracah import fusion_table_compare, alcove_identity_holds
from .repchar import character_eval, weight_multiplicities
from .shadowlink import (
    derive_shadow,
    empty_shadow,
    parse_link,
    shadow_state_sum,
    vertical_only_wlo,
    wlo_shadow,
)

GRID = (
    [("A1", k) for k in range(1, 9)]
    + [("A2", k) for k in range(1, 5)]
    + [("B2", k) for k in range(1, 4)]
    + [("G2", k) for k in (1, 2)]
)

ROUTE_TOL = 1e-9
CLOSED_FORM_TOL = 1e-9
VERTICAL_TOL = 1e-8
FIELD_TOL = 1e-10
BRIDGE_TOL = 1e-10
DIM_TOL = 1e-10


def _rel(a, b) -> float:
    # relative deviation, falling back to absolute when the target is small
    return float(abs(a - b) / max(1.0, abs(b)))


# --------------------------------------------------------------------------
# link documents


def three_loops_doc(lam, mu, nu) -> dict:
    """Three unnested loops with winding 1."""
    return {
        "loops": [
            {"id": "l1", "color": list(lam), "winding": 1},
            {"id": "l2", "color": list(mu), "winding": 1},
            {"id": "l3", "color": list(nu), "winding": 1},
        ]
    }


def nested_doc(lam, mu, nu) -> dict:
    """Loop ``nu`` nested inside loop ``lam``, loop ``mu`` separate."""
    return {
        "loops": [
            {"id": "lam", "color": list(lam), "winding": 1},
            {"id": "nu", "color": list(nu), "winding": 1, "parent": "lam"},
            {"id": "mu", "color": list(mu), "winding": 1},
        ]
    }


def mixed_doc(lam, mu, nu) -> dict:
    """Loop ``lam`` around a vertical point ``nu``; vertical point ``mu`` outside."""
    return {
        "loops": [{"id": "lam", "color": list(lam), "winding": 1, "inside_is_plus": True}],
        "vertical": [{"at": "lam", "color": list(nu)}, {"at": "Y0", "color": list(mu)}],
    }


def genus1_doc(lam, winding=1, vertical=None) -> dict:
    """One contractible loop on the torus: a disk (chi 1) and its complement (chi -1)."""
    doc = {
        "surface": {"genus": 1},
        "model": "explicit",
        "faces": [{"id": "D", "euler": 1}, {"id": "R", "euler": -1}],
        "loops": [
            {"id": "a", "color": list(lam), "winding": winding, "plus_face": "D", "minus_face": "R"}
        ],
        "sides": {"a": {"D": 1, "R": -1}},
    }
    if vertical is not None:
        doc["vertical"] = [{"at": "R", "color": list(vertical)}]
    return doc


def random_forest_doc(rng: random.Random, alcove, max_loops=4, vertical=True) -> dict:
    n = rng.randint(1, max_loops)
    loops = []
    for i in range(n):
        parent = rng.choice([None] + [lp["id"] for lp in loops])
        loops.append(
            {
                "id": f"L{i}",
                "color": list(rng.choice(alcove)),
                "winding": rng.randint(-2, 2),
                "inside_is_plus": rng.random() < 0.5,
                "parent": parent,
            }
        )
    doc = {"loops": loops}
    if vertical and rng.random() < 0.4:
        faces = ["Y0"] + [lp["id"] for lp in loops]
        doc["vertical"] = [{"at": rng.choice(faces), "color": list(rng.choice(alcove))}]
    return doc


def route_corpus(md: ModularData, n_random=20, seed=0):
    """``(name, doc)`` pairs: random forests, three loops, a nested pair, a genus-1 shadow, a mixed link."""
    rng = random.Random(seed)
    A = md.alcove
    top = A[-1]
    mid = A[min(1, len(A) - 1)]
    out = [(f"forest{i}", random_forest_doc(rng, A)) for i in range(n_random)]
    out.append(("three_loops", three_loops_doc(mid, mid, top)))
    out.append(("nested", nested_doc(top, mid, mid)))
    out.append(("genus1", genus1_doc(mid, winding=2, vertical=top)))
    out.append(("mixed", mixed_doc(mid, top, mid)))
    return out


# --------------------------------------------------------------------------
# suites


def check_modular(md: ModularData, tol=None) -> dict:
    rep = modular_identity_report(md)
    if tol is not None:
        rep["pass"] = rep["s2_minus_c"] < tol and rep["st3_minus_c"] < tol
    return rep


def check_dims(md: ModularData, tol=DIM_TOL) -> dict:
    """Quantum dimensions from the S-ratio against the sine product."""
    h = md.shifted_level
    dev = 0.0
    for i, lam in enumerate(md.alcove):
        dev = max(dev, _rel(md.qdims[i], sin_product(md.rs, h, lam)))
    return {"max_relative_deviation": dev, "pass": dev < tol}


def check_fusion(md: ModularData, tol=1e-8) -> dict:
    rep = fusion_table_compare(md, tol)
    rep["pass"] = rep["max_deviation"] < tol and rep["rounded_mismatches"] == 0
    return rep


def check_fusion_identity(md: ModularData, tol=1e-9) -> dict:
    return fusion_matrix_identity_check(md, tol)


def check_alcove_identity(md: ModularData) -> dict:
    return {"pass": alcove_identity_holds(md.rs, md.level)}


def check_examples(md: ModularData, tol=CLOSED_FORM_TOL) -> dict:
    """Closed forms for three unnested loops and for a nested pair, on every color triple."""
    A, T, S = md.alcove, md.v, md.s
    dev1 = dev2 = 0.0
    for lam, mu, nu in itertools.product(A, repeat=3):
        a, b, c = md.index(lam), md.index(mu), md.index(nu)
        N = md.fusion_integers[a, b, c]
        v1 = shadow_state_sum(md, derive_shadow(parse_link(three_loops_doc(lam, mu, nu))))
        e1 = T[a] * T[b] * T[c] / (T[0] ** 3 * S[0, 0] ** 2) * N
        v2 = shadow_state_sum(md, derive_shadow(parse_link(nested_doc(lam, mu, nu))))
        e2 = T[b] ** 2 / (T[0] ** 2 * S[0, 0] ** 2) * N
        dev1, dev2 = max(dev1, _rel(v1, e1)), max(dev2, _rel(v2, e2))
    return {
        "three_loops_max_relative_deviation": dev1,
        "nested_max_relative_deviation": dev2,
        "triples": len(A) ** 3,
        "pass": dev1 < tol and dev2 < tol,
    }


def check_routes(md: ModularData, corpus=None, tol=ROUTE_TOL) -> dict:
    """``cs_state_sum = K^(2-2g) |X_L|`` and ``wlo_cs = wlo_shadow`` over a corpus."""
    corpus = route_corpus(md) if corpus is None else corpus
    rows = []
    worst = worst_wlo = 0.0
    for name, doc in corpus:
        sh = derive_shadow(parse_link(doc))
        K, _ = constants(md, sh.genus)
        cs = cs_state_sum(sh, md)
        shadow = shadow_state_sum(md, sh)
        dev = _rel(cs, K ** (2 - 2 * sh.genus) * shadow)
        dev_w = _rel(wlo_cs(sh, md), wlo_shadow(md, sh))
        worst, worst_wlo = max(worst, dev), max(worst_wlo, dev_w)
        rows.append({"name": name, "loops": len(sh.loops), "genus": sh.genus, "deviation": dev})
    return {
        "links": len(rows),
        "max_relative_deviation": worst,
        "wlo_max_relative_deviation": worst_wlo,
        "rows": rows,
        "pass": worst < tol and worst_wlo < tol,
    }


def check_normalization(md: ModularData, tol=1e-10) -> dict:
    dev = max(abs(wlo_cs(empty_shadow(g), md) - 1) for g in (0, 1, 2))
    return {"max_deviation": float(dev), "pass": dev < tol}


def check_vertical(md: ModularData, tol=VERTICAL_TOL, genera=(0, 1, 2)) -> dict:
    """Three vertical points give ``N``; the vertical-only closed form for several genera."""
    A = md.alcove
    dev3 = devg = 0.0
    for lam, mu, nu in itertools.product(A, repeat=3):
        N = md.fusion_integers[md.index(lam), md.index(mu), md.index(nu)]
        sh = empty_shadow(0, [lam, mu, nu])
        dev3 = max(dev3, abs(wlo_cs(sh, md) - N), abs(wlo_shadow(md, sh) - N))
        for g in genera:
            shg = empty_shadow(g, [lam, mu, nu])
            devg = max(devg, _rel(wlo_cs(shg, md), vertical_only_wlo(md, [lam, mu, nu], g)))
    return {
        "three_point_max_deviation": float(dev3),
        "genus_formula_max_relative_deviation": devg,
        "pass": dev3 < tol and devg < tol,
    }


def check_mixed(md: ModularData, tol=ROUTE_TOL) -> dict:
    """The loop-around-a-vertical-point link against its closed form, plus
    agreement of the Racah-integer and Verlinde-valued shadow sums."""
    A, T, S = md.alcove, md.v, md.s
    empty = shadow_state_sum(md, empty_shadow(0)).real
    dev = dev_v = 0.0
    for lam, mu, nu in itertools.product(A, repeat=3):
        a, b, c = md.index(lam), md.index(mu), md.index(nu)
        sh = derive_shadow(parse_link(mixed_doc(lam, mu, nu)))
        expected = T[b] / T[c] * md.fusion_integers[a, b, c] / (empty * S[0, 0] ** 2)
        dev = max(dev, _rel(wlo_cs(sh, md), expected))
        dev_v = max(
            dev_v, _rel(shadow_state_sum(md, sh), shadow_state_sum(md, sh, "verlinde"))
        )
    return {
        "max_relative_deviation": dev,
        "racah_vs_verlinde_deviation": dev_v,
        "pass": dev < tol and dev_v < tol,
    }


def check_field_identities(md: ModularData, doc=None, tol=FIELD_TOL, bijection=True) -> dict:
    """Face-field identities on every regular field of a link; coloring bijection by enumeration."""
    A = md.alcove
    if doc is None:
        doc = three_loops_doc(A[-1], A[min(1, len(A) - 1)], A[-1])
    sh = derive_shadow(parse_link(doc))
    supports = [list(weight_multiplicities(md.rs, sh.color[j]).mults) for j in sh.loops]
    ok_i, dev_ii, dev_iii, fields = True, 0.0, 0.0, 0
    for lam in A:
        alpha0 = tuple(a + r for a, r in zip(lam, md.rs.rho))
        for choice in itertools.product(*supports):
            field = face_field(sh, md, alpha0, list(choice))
            if not field.valid:
                continue
            fields += 1
            r = field_identities(sh, md, field)
            ok_i = ok_i and r["i"]
            dev_ii, dev_iii = max(dev_ii, r["ii"]), max(dev_iii, r["iii"])
    out = {
        "fields": fields,
        "step_difference": ok_i,
        "determinant_deviation": dev_ii,
        "framing_deviation": dev_iii,
        "alcove_identity": alcove_identity_holds(md.rs, md.level),
    }
    passed = ok_i and dev_ii < tol and dev_iii < tol and out["alcove_identity"]
    if bijection:
        small = {"loops": [{"id": "a", "color": list(A[-1]), "winding": 2}]}
        out["bijection"] = coloring_bijection(derive_shadow(parse_link(small)), md)
        passed = passed and out["bijection"]["pass"]
    out["pass"] = passed
    return out


def check_bridge(md: ModularData, tol=BRIDGE_TOL) -> dict:
    """``chi_mu(exp((lam+rho)/h))`` against S-matrix ratios.

    ``literal`` uses the S-matrix with the positive exponent;
    ``selected`` uses ``md.s`` and evaluates the character at
    ``exponent_sign * (lam+rho)/h``.  The two coincide when the positive
    sign already satisfies the modular identities.
    """
    rs, h = md.rs, md.shifted_level
    S_plus = s_matrix(rs, md.level, 1, md.alcove)
    dev_lit = dev_sel = 0.0
    for j, lam in enumerate(md.alcove):
        point = [(a + r) / h for a, r in zip(lam, rs.rho)]
        for i, mu in enumerate(md.alcove):
            chi = character_eval(rs, mu, point)
            chi_s = character_eval(rs, mu, [md.exponent_sign * x for x in point])
            dev_lit = max(dev_lit, abs(chi - S_plus[i, j] / S_plus[0, j]))
            dev_sel = max(dev_sel, abs(chi_s - md.s[i, j] / md.s[0, j]))
    return {
        "literal_max_deviation": float(dev_lit),
        "selected_max_deviation": float(dev_sel),
        "exponent_sign": md.exponent_sign,
        "pass": dev_lit < tol and dev_sel < tol,
    }


SUITES = {
    "modular": check_modular,
    "dims": check_dims,
    "fusion": check_fusion,
    "fusion_identity": check_fusion_identity,
    "alcove_identity": check_alcove_identity,
    "examples": check_examples,
    "routes": check_routes,
    "normalization": check_normalization,
    "vertical": check_vertical,
    "mixed": check_mixed,
    "fields": check_field_identities,
    "bridge": check_bridge,
}


def run_all(md: ModularData, tolerances=None) -> dict:
    """Run every suite; ``tolerances`` maps suite name to an override."""
    tolerances = tolerances or {}
    out = {}
    for name, fn in SUITES.items():
        if name in tolerances:
            out[name] = fn(md, tol=tolerances[name])
        else:
            out[name] = fn(md)
    out["pass"] = all(v["pass"] for v in out.values())
    return out


def np_free(obj):
    """Recursively convert numpy scalars to Python numbers."""
    if isinstance(obj, dict):
        return {k: np_free(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [np_free(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj
