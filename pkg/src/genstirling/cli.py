"""Command-line front end.

Subcommands: ``table``, ``aseq``, ``function``, ``verify``, ``asym``, ``presets``.
Data goes to stdout as CSV (header row, LF) or versioned JSON; diagnostics go
to stderr.

Exit codes::

    0  success
    1  a verify suite failed
    2  unparseable or out-of-range input
    3  degenerate triple or method not applicable
    4  algorithms disagree (table --algo all)
    5  outside the convergence regime, Gamma pole or branch cut
    6  series failed to converge
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from datetime import datetime, timezone
from fractions import Fraction

import mpmath

from . import __version__
from .asymptotics import asym_error_study
from .core import (
    ALGORITHMS,
    build_triangle,
    verify_expansion,
    verify_pair_inverse,
    verify_remark22,
)
from .errors import ConvergenceRegimeError, DisagreementError, GenStirlingError, InputError
from .functions import (
    ZERO_ORDER_MODES,
    StirlingFunctionQuery,
    egf_coefficients,
    evaluate_stirling_function,
    verify_fn_recurrence,
)
from .numeric import default_order, exact
from .presets import CATALOG, preset_lookup
from .riordan import (
    a_sequence,
    aseq_identity_holds,
    asequence_recurrence_holds,
    riordan_from_asequence,
    stirling_generating_pair,
)
from .triple import ParameterTriple

SCHEMA = 1
EXPANSION_SAMPLES = ("-3", "-1/2", "0", "1/3", "2", "7/2", "5")
EGF_TOL = 1e-10
EGF_MAX_K = 6


# ---------------------------------------------------------------------------
# parsing


def parse_rational(text: str) -> Fraction:
    """``p/q`` with optional sign, integers, or finite decimals (converted exactly)."""
    try:
        return exact(text)
    except InputError:
        raise InputError(f"not a rational number: {text!r}")


_INT = re.compile(r"^[+-]?\d+$")


def parse_complex(text: str):
    """``a``, ``bi``, ``a+bi`` or ``a-bi`` (``j`` also accepted); integers stay ints."""
    s = text.strip().replace(" ", "")
    if _INT.match(s):
        return int(s)
    s = s.replace("i", "j")
    if s.endswith("j") and (len(s) == 1 or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise InputError(f"not a complex number: {text!r}")


def parse_params(items) -> dict:
    params = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"--param expects name=value, got {item!r}")
        params[name.strip()] = parse_rational(value)
    return params


def resolve_triple(args) -> tuple[ParameterTriple, str | None]:
    explicit = [args.alpha, args.beta, args.r]
    if args.preset:
        if any(v is not None for v in explicit):
            raise InputError("give either --preset or --alpha/--beta/--r, not both")
        return preset_lookup(args.preset, **parse_params(args.param)).triple, args.preset
    if args.param:
        raise InputError("--param only applies together with --preset")
    if any(v is None for v in explicit):
        raise InputError("need --alpha, --beta and --r (or --preset)")
    return ParameterTriple(*(parse_rational(v) for v in explicit)), None


def parse_mu_list(text: str) -> list[int]:
    try:
        mus = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--mu expects comma-separated integers, got {text!r}")
    if not mus:
        raise InputError("--mu is empty")
    return mus


# ---------------------------------------------------------------------------
# serialization


def encode(value):
    """JSON-ready form: rationals as exact ``p/q`` strings, complex as ``{re, im}``.

    Plain ints are counts and stay numbers; exact values are always Fractions.
    """
    if isinstance(value, (bool, int)) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 17)
    if isinstance(value, ParameterTriple):
        return {"alpha": str(value.alpha), "beta": str(value.beta), "r": str(value.r)}
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


def scalar_text(value) -> str:
    if isinstance(value, complex):
        return repr(value.real) if value.imag == 0 else f"{value.real!r}{value.imag:+.17g}i"
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 17)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_json(out, kind: str, payload: dict, triple=None, preset=None, algorithm=None):
    metadata = {
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
    }
    if triple is not None:
        metadata["triple"] = triple
    if preset is not None:
        metadata["preset"] = preset
    if algorithm is not None:
        metadata["algorithm"] = algorithm
    record = {"schema": SCHEMA, "kind": kind, "payload": payload, "metadata": metadata}
    json.dump(encode(record), out, indent=2)
    out.write("\n")


def emit_csv(out, header, rows):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([scalar_text(v) for v in row])


# ---------------------------------------------------------------------------
# commands


def cmd_table(args, out) -> int:
    triple, preset = resolve_triple(args)
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    payload = {}
    if args.algo == "all":
        triangles = {name: build_triangle(args.n, triple, name) for name in ALGORITHMS}
        reference = triangles["recurrence"]
        for name, tri in triangles.items():
            if not tri.same_values(reference):
                bad = next((n, k) for n, k, v in reference.entries() if tri[n, k] != v)
                raise DisagreementError(
                    f"{name} disagrees with recurrence at S{bad}: {tri[bad]} != {reference[bad]}"
                )
        triangle = reference
        payload["agreement"] = {"algorithms": list(ALGORITHMS), "identical": True}
    else:
        triangle = build_triangle(args.n, triple, args.algo)
    if args.format == "csv":
        emit_csv(out, ("n", "k", "value"), triangle.entries())
    else:
        payload["rows"] = [list(row) for row in triangle.rows]
        emit_json(out, "triangle", payload, triple, preset, args.algo)
    return 0


def cmd_aseq(args, out) -> int:
    triple, preset = resolve_triple(args)
    triple.require_nondegenerate()
    terms = default_order() if args.terms is None else args.terms
    if terms < 1:
        raise InputError("--terms must be at least 1")
    seq = a_sequence(triple, terms, args.method)
    values = seq.terms[:terms]
    if args.format == "csv":
        emit_csv(out, ("j", "value"), enumerate(values))
    else:
        emit_json(out, "aseq", {"method": args.method, "terms": list(values)}, triple, preset)
    return 0


def _recurrence_residual(q: StirlingFunctionQuery):
    """Residual of the order recurrence, or None when a shifted query is outside the regime."""
    if complex(q.gamma) == 0:
        return None
    try:
        return verify_fn_recurrence(q).residual
    except ConvergenceRegimeError:
        return None


def cmd_function(args, out) -> int:
    triple, preset = resolve_triple(args)
    gamma, eta = parse_complex(args.gamma), parse_complex(args.eta)
    eps = float(parse_rational(args.eps))
    q = StirlingFunctionQuery(gamma, eta, triple, eps, args.tol, args.zero_order)
    result = evaluate_stirling_function(q)
    residual = None if args.no_check else _recurrence_residual(q)
    if args.format == "csv":
        emit_csv(
            out,
            ("gamma", "eta", "re", "im", "terms", "method", "residual"),
            [(complex(gamma), complex(eta), result.value.real, result.value.imag, result.terms, result.method,
              "" if residual is None else residual)],
        )
    else:
        payload = {
            "gamma": complex(gamma),
            "eta": complex(eta),
            "epsilon": eps,
            "value": result.value,
            "terms": result.terms,
            "method": result.method,
            "regime": q.regime,
            "recurrence_residual": residual,
        }
        emit_json(out, "function-value", payload, triple, preset)
    return 0


def _suite_pair_inverse(triple, n):
    r = verify_pair_inverse(n, triple)
    return r.passed, r.checked, r.counterexample


def _suite_expansion(triple, n):
    checked = 0
    for size in range(n + 1):
        r = verify_expansion(size, triple, [exact(z) for z in EXPANSION_SAMPLES])
        checked += r.checked
        if not r.passed:
            return False, checked, r.counterexample
    return True, checked, None


def _suite_remark22(triple, n):
    for size in range(n + 1):
        r = verify_remark22(size, triple)
        if not r.passed:
            return False, size + 1, r.counterexample
    return True, n + 1, None


def _suite_aseq_identity(triple, n):
    seq = a_sequence(triple, n + 1)
    pair = stirling_generating_pair(triple, n + 2)
    if not aseq_identity_holds(seq, pair.h):
        return False, 1, {"identity": "t A(h(t)) = h(t)"}
    triangle = build_triangle(n, triple)
    if not asequence_recurrence_holds(triangle, seq):
        return False, 2, {"identity": "A-sequence row recurrence"}
    if not riordan_from_asequence(seq, triple, n).same_values(triangle):
        return False, 3, {"identity": "A-sequence triangle"}
    return True, 3, None


def _suite_egf(triple, n):
    triangle = build_triangle(n, triple)
    checked = 0
    for k in range(min(n, EGF_MAX_K) + 1):
        coeffs = egf_coefficients(k, triple, 0.0, n)
        for m in range(n + 1):
            want = float(triangle[m, k])
            got = coeffs[m]
            checked += 1
            if abs(got - want) > EGF_TOL * max(1.0, abs(want)):
                return False, checked, {"n": m, "k": k, "expected": triangle[m, k], "got": got}
    return True, checked, None


SUITES = {
    "pair-inverse": _suite_pair_inverse,
    "expansion": _suite_expansion,
    "remark22": _suite_remark22,
    "aseq-identity": _suite_aseq_identity,
    "egf": _suite_egf,
}


def cmd_verify(args, out) -> int:
    triple, preset = resolve_triple(args)
    triple.require_nondegenerate()
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        passed, checked, counterexample = SUITES[name](triple, args.n)
        results.append({"suite": name, "passed": passed, "checked": checked, "counterexample": counterexample})
    ok = all(r["passed"] for r in results)
    if args.format == "csv":
        emit_csv(out, ("suite", "passed", "checked"), [(r["suite"], r["passed"], r["checked"]) for r in results])
    else:
        emit_json(out, "verify-report", {"n": args.n, "passed": ok, "suites": results}, triple, preset)
    for r in results:
        if not r["passed"]:
            print(f"{r['suite']}: FAILED, first counterexample {encode(r['counterexample'])}", file=sys.stderr)
    return 0 if ok else 1


def cmd_asym(args, out) -> int:
    triple, preset = resolve_triple(args)
    eps = float(parse_rational(args.eps))
    study = asym_error_study(args.n, parse_mu_list(args.mu), triple, eps, args.m, args.central)
    if args.format == "csv":
        emit_csv(out, ("mu", "exact", "estimate", "rel_error"),
                 [(row.mu, row.exact, row.estimate, row.rel_error) for row in study.rows])
    else:
        payload = {
            "n": args.n,
            "m": args.m,
            "epsilon": eps,
            "central": args.central,
            "rows": [
                {"mu": row.mu, "exact": row.exact, "estimate": row.estimate, "rel_error": row.rel_error}
                for row in study.rows
            ],
            "decreasing": study.decreasing,
        }
        emit_json(out, "asym-study", payload, triple, preset)
    return 0


def cmd_presets(args, out) -> int:
    entries = []
    for preset in CATALOG.values():
        triple = preset_lookup(preset.name).triple if not preset.params else None
        entries.append((preset, triple))
    if args.format == "csv":
        rows = []
        for preset, triple in entries:
            values = (triple.alpha, triple.beta, triple.r) if triple else ("", "", "")
            rows.append((preset.name, " ".join(preset.params), *values, preset.has_dual))
        emit_csv(out, ("name", "params", "alpha", "beta", "r", "dual"), rows)
    else:
        payload = [
            {"name": p.name, "title": p.title, "params": list(p.params), "triple": t, "dual": p.has_dual}
            for p, t in entries
        ]
        emit_json(out, "presets", {"presets": payload})
    return 0


# ---------------------------------------------------------------------------
# argument parser


def _triple_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters")
    g.add_argument("--alpha", help="rational, e.g. 1/2")
    g.add_argument("--beta")
    g.add_argument("--r")
    g.add_argument("--preset", choices=sorted(CATALOG), metavar="NAME", help="named family (see `presets`)")
    g.add_argument("--param", action="append", metavar="NAME=VALUE", help="free preset parameter; repeatable")


def _format_option(p: argparse.ArgumentParser, default: str = "csv") -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genstirling", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="triangle S(n, k) for 0 <= k <= n <= N")
    _triple_options(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--algo", choices=ALGORITHMS + ("all",), default="recurrence")
    _format_option(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("aseq", help="A-sequence of the Riordan array")
    _triple_options(p)
    p.add_argument("--terms", type=int, help="number of terms (default: series order)")
    p.add_argument("--method", choices=("auto", "closed", "generic"), default="auto")
    _format_option(p)
    p.set_defaults(func=cmd_aseq)

    p = sub.add_parser("function", help="Stirling function S(gamma, eta; eps)")
    _triple_options(p)
    p.add_argument("--gamma", required=True, help="complex, e.g. 2.5+0.3i")
    p.add_argument("--eta", required=True)
    p.add_argument("--eps", default="0")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--zero-order", choices=ZERO_ORDER_MODES, default="closed-form",
                   help="convention for gamma = 0")
    p.add_argument("--no-check", action="store_true", help="skip the recurrence spot-check")
    _format_option(p, "json")
    p.set_defaults(func=cmd_function)

    p = sub.add_parser("verify", help="run identity checks")
    _triple_options(p)
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--n", type=int, default=8)
    _format_option(p, "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asym", help="large-mu expansion against exact values")
    _triple_options(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True, help="comma-separated, e.g. 20,40,80")
    p.add_argument("--m", type=int, default=2, help="number of expansion terms")
    p.add_argument("--eps", default="0")
    p.add_argument("--central", action="store_true", help="estimate S(..., mu r) instead of S(..., r)")
    _format_option(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("presets", help="list named families")
    _format_option(p)
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except GenStirlingError as exc:
        print(f"genstirling {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
