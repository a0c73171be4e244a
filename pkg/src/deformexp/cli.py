"""Command-line front end.

Subcommands::

    deformexp eval e_sub --x 1 --y 3 --h 1
    deformexp table e_sub --x 0:1:0.5 --y 1 --h 1 --format csv
    deformexp expand sub --x 0.2 --y 3 --h 1
    deformexp verify --only 'esub.*' --seed 42

Exit codes: 0 success, 1 domain or convergence failure (or failed
identities), 2 usage error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from decimal import Decimal, InvalidOperation
from typing import Callable, Sequence

from . import defarith as da
from . import defexp as de
from . import genpow as gp
from . import series as se
from . import verify as vf
from .errors import ConvergenceError, DeformExpError, EmptyGridError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DOMAIN = "DOMAIN"

# name -> (flags consumed in order, callable)
FUNCTIONS: dict[str, tuple[tuple[str, ...], Callable[..., float]]] = {
    "e_sub": (("x", "y", "h"), de.e_sub),
    "e_sup": (("x", "y", "h"), de.e_sup),
    "tsallis": (("x", "q"), de.tsallis_q_exp),
    "kaniadakis": (("x", "kappa"), de.kaniadakis_exp),
    "quantum_group": (("y", "p"), de.quantum_group_exp),
    "brace_sub": (("x", "h"), da.brace_sub),
    "brace_sup": (("x", "h"), da.brace_sup),
    # binary group operations read x1 from --x and x2 from --y
    "oplus_sub": (("x", "y", "h"), da.oplus_sub),
    "ominus_sub": (("x", "y", "h"), da.ominus_sub),
    "neg_sub": (("x", "h"), da.neg_sub),
    "oplus_sup": (("x", "y", "h"), da.oplus_sup),
    "ominus_sup": (("x", "y", "h"), da.ominus_sup),
    "shift": (("x", "h"), de.sub_to_sup_shift),
    "gen_pow": (("x", "n", "h"), None),
}
PARAM_FLAGS = ("x", "y", "h", "q", "kappa", "p", "n")

EXPANSIONS = {
    "sub": (se.expand_e_sub, lambda x, y, h: de.e_sub(x, y, h)),
    "subneg": (se.expand_e_sub_neg, lambda x, y, h: de.e_sub(x, y, -h)),
    "sup": (se.expand_e_sup, lambda x, y, h: de.e_sup(x, y, h)),
}


class UsageError(Exception):
    pass


def fmt(v) -> str:
    """17 significant digits: enough for any double to round-trip."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _dump_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, allow_nan=False)


def _write_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(c) for c in row])
    return buf.getvalue()


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _range(text: str) -> list[float]:
    """Parse ``lo:hi:step`` (inclusive) or a single number."""
    if ":" not in text:
        return [_number(text)]
    try:
        lo, hi, step = (Decimal(p) for p in text.split(":"))
    except (ValueError, InvalidOperation):
        raise UsageError(f"malformed range {text!r}; expected lo:hi:step") from None
    if not (lo.is_finite() and hi.is_finite() and step.is_finite()):
        raise UsageError(f"range {text!r} must be finite")
    if lo > hi:
        raise UsageError(f"range {text!r} has lo > hi")
    if step <= 0:
        raise UsageError(f"range {text!r} needs step > 0")
    count = int((hi - lo) / step) + 1
    return [float(lo + i * step) for i in range(count)]


def _call(name: str, args: dict, kind: str):
    params, func = FUNCTIONS[name]
    vals = [args[p] for p in params]
    if name == "gen_pow":
        z, n, h = vals
        if n != int(n):
            raise UsageError("--n must be an integer")
        return gp.gen_pow(z, int(n), h, kind)
    return func(*vals)


def _params_for(name: str, ns) -> tuple[str, ...]:
    params = FUNCTIONS[name][0]
    missing = [p for p in params if getattr(ns, p) is None]
    if missing:
        raise UsageError(f"{name} needs " + ", ".join("--" + m for m in missing))
    extra = [p for p in PARAM_FLAGS if p not in params and getattr(ns, p) is not None]
    if extra:
        raise UsageError(f"{name} does not take " + ", ".join("--" + e for e in extra))
    return params


# ---------------------------------------------------------------- commands

def cmd_eval(ns) -> int:
    params = _params_for(ns.function, ns)
    args = {p: _number(getattr(ns, p)) for p in params}
    value = _call(ns.function, args, ns.kind)
    if ns.format == "text":
        print(fmt(value))
    elif ns.format == "csv":
        sys.stdout.write(_write_csv(list(params) + ["value"], [[args[p] for p in params] + [value]]))
    else:
        print(_dump_json({"function": ns.function, "args": args, "value": value}))
    return EXIT_OK


def cmd_table(ns) -> int:
    params = _params_for(ns.function, ns)
    axes = [_range(getattr(ns, p)) for p in params]
    rows = []
    for combo in itertools.product(*axes):
        args = dict(zip(params, combo))
        try:
            value = _call(ns.function, args, ns.kind)
        except (DeformExpError, ValueError, ArithmeticError):
            value = DOMAIN
        rows.append(list(combo) + [value])
    header = list(params) + ["value"]
    if ns.format == "csv":
        sys.stdout.write(_write_csv(header, rows))
    elif ns.format == "json":
        print(_dump_json({"function": ns.function, "columns": header, "rows": rows}))
    else:
        cells = [header] + [[fmt(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return EXIT_OK


def cmd_expand(ns) -> int:
    expand, closed = EXPANSIONS[ns.which]
    x, y, h = (_number(getattr(ns, p)) for p in ("x", "y", "h"))
    res = expand(x, y, h, max_terms=ns.max_terms, tol=ns.tol)
    ref = closed(x, y, h)
    doc = {
        "which": ns.which,
        "x": x,
        "y": y,
        "h": h,
        "value": res.value,
        "terms_used": res.terms_used,
        "terminated_exactly": res.terminated_exactly,
        "tail_estimate": res.tail_estimate,
        "reference": ref,
        "discrepancy": abs(res.value - ref),
    }
    if ns.format == "json":
        print(_dump_json(doc))
    elif ns.format == "csv":
        sys.stdout.write(_write_csv(list(doc), [list(doc.values())]))
    else:
        for k, v in doc.items():
            print(f"{k}: {fmt(v)}")
    return EXIT_OK


def cmd_verify(ns) -> int:
    if ns.list:
        for i in vf.identity_ids():
            print(f"{i}\t{vf.REGISTRY[i].formula}")
        return EXIT_OK
    ids = vf.select(ns.only)
    if not ids:
        print(f"--only {ns.only!r} matches no identity; registered identities:", file=sys.stderr)
        for i in vf.identity_ids():
            print(f"  {i}", file=sys.stderr)
        return EXIT_USAGE
    overrides = {"samples": ns.samples} if ns.samples else {}
    reports = vf.run_all(overrides, seed=ns.seed, pattern=ns.only, workers=ns.workers)
    ok = all(r.passed for r in reports)
    if ns.format == "json":
        print(_dump_json({"seed": ns.seed, "passed": ok, "reports": [r.to_dict() for r in reports]}))
    elif ns.format == "csv":
        cols = ["identity_id", "verdict", "samples", "skipped", "max_abs_err", "max_rel_err", "max_err", "tolerance"]
        rows = [[getattr(r, c) for c in cols] for r in reports]
        sys.stdout.write(_write_csv(cols, rows))
    else:
        width = max(len(r.identity_id) for r in reports)
        for r in reports:
            print(f"{r.verdict.upper():4s}  {r.identity_id:<{width}s}  err={r.max_err:.3e}  tol={r.tolerance:.0e}  n={r.samples}")
        n_pass = sum(r.passed for r in reports)
        print(f"{n_pass}/{len(reports)} identities passed (seed {ns.seed})")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deformexp", description="Deformed exponential functions of two variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    def add_params(p, help_suffix=""):
        for flag in PARAM_FLAGS:
            p.add_argument(f"--{flag}", default=None, help=f"value of {flag}{help_suffix}")
        p.add_argument("--kind", choices=[k.value for k in gp.PowerKind], default="backward",
                       help="power family for gen_pow")

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("function", choices=sorted(FUNCTIONS))
    add_params(p)
    add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="tabulate a function over ranges given as lo:hi:step")
    p.add_argument("function", choices=sorted(FUNCTIONS))
    add_params(p, " or a lo:hi:step range")
    add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("expand", help="sum a series expansion and compare with the closed form")
    p.add_argument("which", type=str.lower, choices=sorted(EXPANSIONS))
    for flag in ("x", "y", "h"):
        p.add_argument(f"--{flag}", required=True)
    p.add_argument("--max-terms", type=int, default=se.DEFAULT_MAX_TERMS)
    p.add_argument("--tol", type=float, default=se.DEFAULT_TOL)
    add_format(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run the identity-verification suite")
    p.add_argument("--only", default=None, help="glob pattern over identity ids, e.g. 'esub.*'")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=None, help="points per deformation value (default 50)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--list", action="store_true", help="list registered identities and exit")
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--x -1:1:0.5`` into ``--x=-1:1:0.5`` so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok.startswith("--") and tok[2:] in PARAM_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and nxt[1:2] in "0123456789.":
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = parser.parse_args(_glue_negative_values(argv))
    try:
        return ns.func(ns)
    except UsageError as exc:
        parser.error(str(exc))
    except (ConvergenceError, EmptyGridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (DeformExpError, ValueError, ArithmeticError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
    return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
