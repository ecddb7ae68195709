"""Command-line entry point: ``shadowsum <command> [options]``.

Commands
--------
modular   alcove, S/T/C matrices and quantum dimensions
fusion    Verlinde and Racah fusion tables with their maximal deviation
shadow    shadow state sum of a link document (CS route reported alongside)
cs-sum    torus-gauge state sum of a link document (shadow route alongside)
wlo       normalized Wilson loop observable by both routes
verify    all verification suites for one (algebra, level)

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or input errors.  Errors are printed to stdout as a JSON object with
``code``, ``message`` and ``context``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .cssum import K_constant, c1_raw, cs_state_sum
from .errors import (
    ModularIdentityFailure,
    NegativeFusion,
    NonIntegerFusion,
    ParseError,
    ShadowSumError,
)
from .liealg import DEFAULT_WEYL_CAP, build_root_system
from .modular import build_modular_data, modular_identity_report
from .qracah import racah_tensor
from .shadowlink import derive_shadow, empty_state_sum, parse_link, shadow_state_sum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# errors that mean a mathematical check failed rather than bad input
_CHECK_ERRORS = (ModularIdentityFailure, NonIntegerFusion, NegativeFusion)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _num(x):
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, float):
        return float(f"{x:.15g}")
    return x


def _clean(obj):
    obj = checks.np_free(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_clean(v) for v in obj]
    return _num(obj)


def _matrix(M):
    return [[complex(v) for v in row] for row in M]


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shadowsum", description="Shadow and torus-gauge state sums for colored links.")
    p.add_argument("command", choices=["modular", "fusion", "shadow", "cs-sum", "wlo", "verify"])
    p.add_argument("input", nargs="?", help="link document (JSON) for shadow/cs-sum/wlo")
    p.add_argument("--algebra", help="e.g. A1, A2, B2, G2 (defaults to the document's value)")
    p.add_argument("--level", type=int, help="positive integer level k")
    p.add_argument("--format", choices=["json", "table"], default="json", dest="output_format")
    p.add_argument("--tol", type=_positive_float, help="tolerance for the shadow/CS comparison")
    p.add_argument(
        "--suite-tol",
        action="append",
        default=[],
        metavar="NAME=TOL",
        help="override a verify-suite tolerance (repeatable)",
    )
    p.add_argument("--weyl-cap", type=int, default=DEFAULT_WEYL_CAP)
    return p


def _load_doc(path):
    if path is None:
        raise _UsageError("this command needs a link document")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None
    return json.loads(text) if text.strip() else {}


def _setup(args, doc=None):
    algebra = args.algebra or (doc or {}).get("algebra")
    level = args.level if args.level is not None else (doc or {}).get("level")
    if algebra is None or level is None:
        raise _UsageError("--algebra and --level are required (or must be set in the document)")
    rs = build_root_system(algebra, args.weyl_cap)
    return build_modular_data(rs, level)


def _cmd_modular(md, args):
    return {
        "algebra": str(md.rs.spec),
        "level": md.level,
        "alcove": [list(w) for w in md.alcove],
        "central_charge": str(md.central_charge),
        "exponent_sign": md.exponent_sign,
        "quantum_dimensions": [float(d) for d in md.qdims],
        "S": _matrix(md.s),
        "T": [complex(v) for v in md.v],
        "C": [[int(v) for v in row] for row in md.c],
        "checks": modular_identity_report(md),
    }, modular_identity_report(md)["pass"]


def _cmd_fusion(md, args):
    R = racah_tensor(md)
    N = md.fusion_tensor
    V = N[list(md.star), :, :].transpose(1, 2, 0)  # V[g, a, b] = N^b_{g a}
    rows = []
    for g, gamma in enumerate(md.alcove):
        for a, alpha in enumerate(md.alcove):
            for b, beta in enumerate(md.alcove):
                rows.append(
                    {
                        "gamma": list(gamma),
                        "alpha": list(alpha),
                        "beta": list(beta),
                        "verlinde": complex(V[g, a, b]),
                        "racah": int(R[g, a, b]),
                    }
                )
    tol = args.tol if args.tol is not None else 1e-8
    cmp = checks.check_fusion(md, tol)
    return {
        "algebra": str(md.rs.spec),
        "level": md.level,
        "convention": "N^beta_{gamma alpha}: multiplicity of beta in gamma x alpha",
        "table": rows,
        "max_deviation": cmp["max_deviation"],
        "rounded_mismatches": cmp["rounded_mismatches"],
    }, cmp["pass"]


def _evaluate(md, doc, args):
    sh = derive_shadow(parse_link(doc))
    g = sh.genus
    K = K_constant(md)
    shadow = shadow_state_sum(md, sh)
    cs = cs_state_sum(sh, md)
    scaled = K ** (2 - 2 * g) * shadow
    dev = abs(cs - scaled) / max(1.0, abs(scaled))
    empty = empty_state_sum(md, g)
    wlo_s = shadow / empty
    wlo_c = c1_raw(md, g) * cs
    tol = args.tol if args.tol is not None else checks.ROUTE_TOL
    return {
        "algebra": str(md.rs.spec),
        "level": md.level,
        "genus": g,
        "faces": [
            {"id": f, "euler": sh.euler[f], "gleam": sh.gleam[f]} for f in sh.faces
        ],
        "K": K,
        "shadow_state_sum": shadow,
        "cs_state_sum": cs,
        "K_power_times_shadow": scaled,
        "relative_difference": dev,
        "wlo_shadow": wlo_s,
        "wlo_cs": wlo_c,
        "wlo_difference": abs(wlo_s - wlo_c),
        "tolerance": tol,
    }, dev < tol and abs(wlo_s - wlo_c) < tol * max(1.0, abs(wlo_s))


def _cmd_verify(md, args):
    tolerances = {}
    for item in args.suite_tol:
        name, _, value = item.partition("=")
        if name not in checks.SUITES:
            raise _UsageError(f"unknown suite {name!r}; choose from {sorted(checks.SUITES)}")
        try:
            tolerances[name] = _positive_float(value)
        except argparse.ArgumentTypeError as exc:
            raise _UsageError(str(exc)) from None
    result = checks.run_all(md, tolerances)
    return {"algebra": str(md.rs.spec), "level": md.level, "suites": result}, result["pass"]


def _table(doc) -> str:
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append((prefix, json.dumps(obj)))

    walk("", doc)
    width = max((len(k) for k, _ in lines), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in lines)


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        doc = None
        if args.command in ("shadow", "cs-sum", "wlo"):
            doc = _load_doc(args.input)
        md = _setup(args, doc)
        if args.command == "modular":
            result, ok = _cmd_modular(md, args)
        elif args.command == "fusion":
            result, ok = _cmd_fusion(md, args)
        elif args.command == "verify":
            result, ok = _cmd_verify(md, args)
        else:
            result, ok = _evaluate(md, doc, args)
            result["command"] = args.command
        result["pass"] = bool(ok)
    except _UsageError as exc:
        _emit_error(out, {"code": "usage", "message": str(exc), "context": {}})
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        _emit_error(out, {"code": "parse_error", "message": f"invalid JSON: {exc}", "context": {}})
        return EXIT_USAGE
    except ShadowSumError as exc:
        _emit_error(out, exc.as_dict())
        return EXIT_FAIL if isinstance(exc, _CHECK_ERRORS) else EXIT_USAGE
    result = _clean(result)
    if args.output_format == "table":
        out.write(_table(result) + "\n")
    else:
        out.write(json.dumps(result, sort_keys=False) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _emit_error(out, obj):
    out.write(json.dumps(_clean(obj), default=str) + "\n")


def main(argv=None) -> None:
    sys.exit(run(argv))
