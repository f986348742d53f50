"""Batch command-line interface.

    hgenocchi family eval|table   unified family values
    hgenocchi verify [suite.json] identity suite, report written with --out
    hgenocchi dist <command>      GHG distribution quantities

Exit codes: 0 success, 1 an expected-exact identity failed, 2 usage or
validation error.  Every command prints rows of string values, as a JSON
array of objects or as CSV with a header; both carry the same strings.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from importlib import resources

from . import ghg
from .errors import HGError, UsageError
from .families import UnifiedParams, unified_coeffs, unified_poly
from .identities import SuiteSpec, run_suite, suite_ok
from .series import EXACT, float_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class FlagError(UsageError):
    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# output -------------------------------------------------------------------------


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# argument handling --------------------------------------------------------------


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _precision(text):
    v = _positive_int(text)
    if v < 64:
        raise argparse.ArgumentTypeError(f"must be >= 64 bits, got {v}")
    return v


def _epsilon(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return v


def _int_list(text):
    try:
        out = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in out):
        raise argparse.ArgumentTypeError(f"coordinates must be >= 0, got {text!r}")
    return out


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--mode", choices=("exact", "float"), default=None)
    g.add_argument("--precision", type=_precision, default=None, help="bits in float mode (default 256)")
    g.add_argument("--order", type=_positive_int, default=None, help="series truncation order")
    g.add_argument("--epsilon", type=_epsilon, default=None, help="tail tolerance")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--seed", type=int, default=None)
    return g


def _field(args, default_mode="exact"):
    mode = args.mode or default_mode
    if mode == "exact":
        return EXACT
    return float_field(args.precision or 256)


def _parse(F, flag, text):
    try:
        return F.parse(text)
    except UsageError as exc:
        raise FlagError(flag, str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    parser = argparse.ArgumentParser(prog="hgenocchi", description=__doc__.splitlines()[0], parents=[g])
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="evaluate the unified family", parents=[g])
    fsub = fam.add_subparsers(dest="action", required=True)
    for action in ("eval", "table"):
        p = fsub.add_parser(action, parents=[g])
        p.add_argument("--r", type=_positive_int, required=True)
        p.add_argument("--k", type=_nonneg_int, default=0)
        p.add_argument("--lnA", default="0")
        p.add_argument("--lnB", default="1")
        p.add_argument("--lnC", default="1")
        p.add_argument("--alphas", required=True, help="comma-separated, one per factor")
        p.add_argument("--x", default="0")
        p.add_argument("--y", default="0")
        p.add_argument("--m", type=_positive_int, default=2)
        if action == "eval":
            p.add_argument("--n", type=_nonneg_int, required=True)
        else:
            p.add_argument("--n-max", type=_nonneg_int, default=None, help="defaults to --order")

    ver = sub.add_parser("verify", help="run an identity suite", parents=[g])
    ver.add_argument("suite", nargs="?", default=None, help="suite JSON (default: the shipped suite)")
    ver.add_argument("--out", default=None, help="write the full report here")

    dist = sub.add_parser("dist", help="GHG distribution quantities", parents=[g])
    dsub = dist.add_subparsers(dest="action", required=True)
    for action in ("pmf", "cdf", "moments", "reliability", "hazard", "classify", "normalizer"):
        p = dsub.add_parser(action, parents=[g])
        p.add_argument("--params", default=None, help="JSON file with r, m, alphas, gamma, beta, n")
        p.add_argument("--r", type=_positive_int, default=None)
        p.add_argument("--m", type=_positive_int, default=None)
        p.add_argument("--alphas", default=None)
        p.add_argument("--gamma", default=None)
        p.add_argument("--beta", default=None)
        p.add_argument("--n", type=_nonneg_int, default=None)
        if action in ("pmf", "reliability", "hazard"):
            p.add_argument("--x", type=_int_list, required=True, help="lattice point, comma-separated")
        if action in ("pmf", "reliability", "hazard"):
            p.add_argument("--method", choices=("formula", "direct"), default="formula")
        if action == "cdf":
            p.add_argument("--i", type=_nonneg_int, default=0, help="coordinate (0-based)")
            p.add_argument("--x", type=_nonneg_int, required=True)
            p.add_argument("--method", choices=("direct", "lemma"), default="direct")
        if action == "moments":
            p.add_argument("--i", type=_nonneg_int, default=None, help="coordinate (default: all)")
            p.add_argument("--ell", type=_nonneg_int, default=2, help="highest moment order")
            p.add_argument("--kind", choices=("raw", "factorial"), default="raw")
        if action == "classify":
            p.add_argument("--class", dest="cls", choices=ghg.CLASSES, required=True)
            p.add_argument("--grid", type=_positive_int, default=6)
            p.add_argument("--tol", type=_epsilon, default=ghg.DEFAULT_TOLERANCE)
        if action == "normalizer":
            p.add_argument("--method", choices=ghg.NORMALIZER_METHODS, default="series")
    return parser


# commands -----------------------------------------------------------------------


def _unified(args, F) -> UnifiedParams:
    alphas = [_parse(F, "--alphas", a) for a in args.alphas.split(",")]
    values = {flag: _parse(F, f"--{flag}", getattr(args, flag)) for flag in ("lnA", "lnB", "lnC", "x", "y")}
    try:
        return UnifiedParams(args.r, args.k, values["lnA"], values["lnB"], values["lnC"], alphas,
                             values["x"], values["y"], args.m, F)
    except UsageError as exc:
        flag = "--alphas" if "alpha" in str(exc) else "--r/--k/--m"
        raise FlagError(flag, str(exc)) from None


def cmd_family(args) -> tuple[list[dict], int]:
    F = _field(args)
    p = _unified(args, F)
    if args.action == "eval":
        return [{"n": str(args.n), "value": F.format(unified_poly(p, args.n))}], EXIT_OK
    n_max = args.n_max if args.n_max is not None else args.order
    if n_max is None:
        raise FlagError("--n-max", "required (or give --order)")
    coeffs = unified_coeffs(p, n_max)
    return [{"n": str(n), "value": F.format(v)} for n, v in enumerate(coeffs)], EXIT_OK


def load_suite(path: str | None) -> dict:
    if path is None:
        text = resources.files("hgenocchi").joinpath("data/default_suite.json").read_text()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise FlagError("suite", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FlagError("suite", f"not valid JSON: {exc}") from None


def cmd_verify(args) -> tuple[list[dict], int]:
    data = load_suite(args.suite)
    try:
        spec = SuiteSpec.from_dict(data)
    except (UsageError, TypeError) as exc:
        raise FlagError("suite", str(exc)) from None
    if args.seed is not None:
        spec.seed = args.seed
    if args.mode is not None:
        spec.mode = args.mode
    if args.precision is not None:
        spec.precision = args.precision
    reports, summary = run_suite(spec)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)
            fh.write("\n")
    rows = [
        {
            "theorem": t,
            "reports": str(row["reports"]),
            "exact_pass": str(row["exact_pass"]),
            "tol_pass": str(row["tol_pass"]),
            "fail": str(row["fail"]),
            "max_residual": row["max_residual"],
            "expected": str(row["expected"]).lower(),
            "passed": str(row["passed"]).lower(),
        }
        for t, row in summary.items()
    ]
    return rows, EXIT_OK if suite_ok(summary) else EXIT_FAIL


def _ghg_params(args):
    data = {}
    if args.params:
        try:
            with open(args.params) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise FlagError("--params", f"cannot read {args.params}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise FlagError("--params", f"not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise FlagError("--params", "must hold a JSON object")
    for key in ("r", "m", "n"):
        if getattr(args, key) is not None:
            data[key] = getattr(args, key)
    if args.alphas is not None:
        data["alphas"] = args.alphas.split(",")
    for key in ("gamma", "beta"):
        if getattr(args, key) is not None:
            data[key] = getattr(args, key)
    if args.precision is not None:
        data["precision"] = args.precision
    try:
        p, eps = ghg.GHGParams.from_dict(data)
        ghg.validate(p)
    except (HGError, ValueError, TypeError) as exc:
        raise FlagError(_blame(args, str(exc)), str(exc)) from None
    if args.epsilon is not None:
        eps = args.epsilon
    return p, eps if eps is not None else ghg.DEFAULT_EPSILON


def _blame(args, message):
    """The inline flag behind a validation message, else --params."""
    for prefix, key in (("alpha", "alphas"), ("expected", "alphas"), ("gamma", "gamma"), ("beta", "beta"),
                        ("r ", "r"), ("m ", "m"), ("n ", "n")):
        if message.startswith(prefix) and getattr(args, key) is not None:
            return f"--{key}"
    return "--params"


def _coords(x):
    return ",".join(str(v) for v in x)


def cmd_dist(args) -> tuple[list[dict], int]:
    if args.mode == "exact":
        raise FlagError("--mode", "distribution commands run in float mode")
    p, eps = _ghg_params(args)
    fmt = p.field.format
    act = args.action
    if act == "pmf":
        return [{"x": _coords(args.x), "pmf": fmt(ghg.pmf(p, args.x))}], EXIT_OK
    if act == "reliability":
        return [{"x": _coords(args.x), "reliability": fmt(ghg.reliability(p, args.x, args.method, eps))}], EXIT_OK
    if act == "hazard":
        hs = ghg.hazard(p, args.x, args.method, eps)
        return [{"x": _coords(args.x), "i": str(i), "hazard": fmt(h)} for i, h in enumerate(hs)], EXIT_OK
    if act == "cdf":
        res = ghg.marginal_cdf(p, args.i, args.x, args.method, eps)
        row = {"i": str(args.i), "x": str(args.x)}
        if args.method == "direct":
            row["cdf"] = fmt(res)
        else:
            row.update(
                printed=fmt(res.printed),
                corrected=fmt(res.corrected),
                direct=fmt(res.direct),
                residual_printed=fmt(res.residual_printed),
                residual_corrected=fmt(res.residual_corrected),
            )
        return [row], EXIT_OK
    if act == "moments":
        coords = range(p.r) if args.i is None else [args.i]
        rows = []
        for i in coords:
            mean, var = ghg.mean_variance(p, i, eps)
            rows.append({"i": str(i), "quantity": "mean", "value": fmt(mean)})
            rows.append({"i": str(i), "quantity": "variance", "value": fmt(var)})
            for ell in range(args.ell + 1):
                rows.append({"i": str(i), "quantity": f"{args.kind}_{ell}", "value": fmt(ghg.moment(p, i, ell, args.kind, eps))})
        return rows, EXIT_OK
    if act == "classify":
        res = ghg.classify(p, args.grid, args.cls, args.tol, eps)
        witness = json.dumps(res.witness, sort_keys=True) if res.witness else ""
        return [{"class": res.cls, "grid": str(args.grid), "verdict": res.verdict, "witness": witness}], EXIT_OK
    if act == "normalizer":
        res = ghg.normalizer(p, args.method, eps)
        return [
            {
                "method": res.method,
                "B": fmt(res.B),
                "inverse": fmt(res.inverse),
                "truncation_used": str(res.truncation_used),
                "tail_bound": fmt(res.tail_bound),
            }
        ], EXIT_OK
    raise UsageError(f"unknown dist command {act!r}")


COMMANDS = {"family": cmd_family, "verify": cmd_verify, "dist": cmd_dist}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rows, code = COMMANDS[args.command](args)
    except HGError as exc:
        print(f"hgenocchi: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(render(rows, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
