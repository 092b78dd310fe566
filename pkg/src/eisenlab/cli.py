"""Command-line front end: JSON/CSV evaluation tables and identity-check reports.

Exit status: 0 ok, 2 usage, 3 precondition, 4 resource limit, 5 consistency
(including a failed verify suite).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import autoseries, greens, kronecker, specfun
from .errors import EisenlabError
from .modgroup import elliptic_anchor
from .suites import SUITES, run_suite

SCHEMA = "1"
_EVALUATORS = ("eval-par", "eval-ell", "eval-poincare", "eval-green")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` style input (also ``2i``, ``-i``, ``1.5``)."""
    t = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not t:
        raise argparse.ArgumentTypeError("empty complex literal")
    t = re.sub(r"(?<![0-9.])i", "1i", t).replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a+bi") from None


def parse_anchor(text: str):
    if text in ("i", "rho"):
        return text
    return parse_complex(text)


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(obj.real)), "im": to_jsonable(float(obj.imag))}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def _budget(args) -> specfun.PrecisionBudget:
    return specfun.PrecisionBudget.from_env(target_abs_err=args.tol)


def _evaluate(command: str, args, z: complex, s: complex):
    budget = _budget(args)
    if command == "eval-par":
        return autoseries.epar(z, s, method=args.method or "auto", budget=budget, modes=args.modes)
    anchor = elliptic_anchor(args.anchor)
    if command == "eval-ell":
        return autoseries.eell(anchor, z, s, method=args.method or "direct", budget=budget, radius=args.radius)
    if command == "eval-poincare":
        return autoseries.pell(anchor, z, s, budget=budget, radius=args.radius)
    return greens.gell(anchor, z, s, budget=budget, radius=args.radius)


def _eval_row(ev) -> dict:
    d = ev.to_dict()
    # report the tail-corrected sum; the raw truncated sum is kept alongside
    d["partial_sum"] = d.pop("value")
    d["value"] = d.pop("corrected")
    d["error_bound"] = d.pop("tail_bound")
    return d


def _cmd_eval(args) -> tuple[dict, int]:
    ev = _evaluate(args.command, args, args.z, args.s)
    return {"result": _eval_row(ev)}, 0


def _cmd_verify(args) -> tuple[dict, int]:
    names = list(SUITES) if "all" in args.suite else args.suite
    suites = {}
    ok = True
    for name in names:
        checks = run_suite(name)
        passed = all(c.passed for c in checks)
        ok &= passed
        suites[name] = {"passed": passed, "checks": [c.to_dict() for c in checks]}
    return {"result": {"status": "pass" if ok else "fail", "suites": suites}}, 0 if ok else 5


def _cmd_residue(args) -> tuple[dict, int]:
    fit = kronecker.residue_at_1(elliptic_anchor(args.anchor), args.z, radius=args.radius or 13.0,
                                 method=args.method or "shell_ratio", budget=_budget(args))
    return {"result": {"value": fit.value, "residual": fit.residual, "sigmas": fit.sigmas,
                       "samples": fit.samples}}, 0


def _cmd_constants(args) -> tuple[dict, int]:
    k = kronecker.kronecker_constants()
    nc = specfun.named_constants()
    return {"result": {
        "C_par": k.C_par, "B_i": k.B_i, "B_rho": k.B_rho, "C_i": k.C_i, "C_rho": k.C_rho,
        "volume": kronecker.VOLUME, "zeta_prime_minus_one": nc.zeta_prime_minus_one,
        "gamma_quarter": nc.gamma_quarter, "gamma_third": nc.gamma_third, "catalan": nc.catalan,
    }}, 0


def _cmd_sweep(args) -> tuple[dict, int]:
    if args.num < 1:
        raise argparse.ArgumentTypeError("--num must be positive")
    rows = []
    for v in np.linspace(args.start, args.stop, args.num):
        z, s = args.z, args.s
        if args.axis == "s-real":
            s = complex(v, s.imag)
        elif args.axis == "s-imag":
            s = complex(s.real, v)
        elif args.axis == "y":
            z = complex(z.real, v)
        else:
            z = complex(v, z.imag)
        row = {"axis_value": float(v), "z": z, "s": s}
        row.update(_eval_row(_evaluate(args.of, args, z, s)))
        rows.append(row)
    return {"result": {"axis": args.axis, "of": args.of, "rows": rows}}, 0


def _flatten(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, (complex, np.complexfloating)):
            out[f"{k}_re"], out[f"{k}_im"] = float(v.real), float(v.imag)
        elif isinstance(v, (list, tuple)):
            out[k] = " ".join(repr(float(x)) for x in v)
        else:
            out[k] = v
    return out


def _csv_rows(command: str, payload: dict) -> list[dict]:
    res = payload["result"]
    if command == "verify":
        return [dict(suite=name, **c) for name, s in res["suites"].items() for c in s["checks"]]
    if command == "sweep":
        return [_flatten(r) for r in res["rows"]]
    return [_flatten(res)]


def render(command: str, request: dict, payload: dict, fmt: str) -> str:
    if fmt == "csv":
        rows = _csv_rows(command, payload)
        buf = io.StringIO()
        fields = sorted(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        return buf.getvalue()
    doc = {"schema": SCHEMA, "command": command, "request": request, **payload}
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eisenlab", description="Parabolic and elliptic Eisenstein series on PSL(2,Z).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, z=True, s=True, anchor=False):
        if z:
            sp.add_argument("--z", type=parse_complex, required=True, help="point a+bi in the upper half-plane")
        if s:
            sp.add_argument("--s", type=parse_complex, required=True, help="spectral parameter a+bi")
        if anchor:
            sp.add_argument("--anchor", type=parse_anchor, default="i", help="i, rho or a point x+yi")
        sp.add_argument("--method", default=None)
        sp.add_argument("--radius", type=float, default=None, help="hyperbolic ball radius")
        sp.add_argument("--modes", type=int, default=None, help="Fourier modes for eval-par")
        sp.add_argument("--tol", type=float, default=1e-10, help="target absolute error")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
        sp.add_argument("--out", default=None, help="write output to FILE")
        sp.set_defaults(format="json")

    common(sub.add_parser("eval-par", help="parabolic Eisenstein series"))
    common(sub.add_parser("eval-ell", help="elliptic Eisenstein series"), anchor=True)
    common(sub.add_parser("eval-poincare", help="elliptic Poincare series"), anchor=True)
    common(sub.add_parser("eval-green", help="automorphic Green's function at the anchor"), anchor=True)
    v = sub.add_parser("verify", help="run identity-check suites")
    v.add_argument("--suite", action="append", choices=[*SUITES, "all"], required=True)
    common(v, z=False, s=False)
    common(sub.add_parser("residue", help="residue of E^ell at s = 1"), s=False, anchor=True)
    sw = sub.add_parser("sweep", help="tabulate an evaluator along one axis")
    sw.add_argument("--of", choices=_EVALUATORS, default="eval-par")
    sw.add_argument("--axis", choices=["s-real", "s-imag", "y", "x"], required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--num", type=int, default=11)
    common(sw, anchor=True)
    common(sub.add_parser("constants", help="Kronecker limit constants"), z=False, s=False)
    return p


_HANDLERS = {
    "verify": _cmd_verify,
    "residue": _cmd_residue,
    "constants": _cmd_constants,
    "sweep": _cmd_sweep,
    **{c: _cmd_eval for c in _EVALUATORS},
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    request = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format") and v is not None}
    try:
        payload, code = _HANDLERS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except EisenlabError as exc:
        err = {"schema": SCHEMA, "command": args.command, "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    text = render(args.command, request, payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
