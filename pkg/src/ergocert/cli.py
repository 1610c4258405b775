"""Command-line front end.

Subcommands:

  bound    certificate from raw drift/minorization constants
  model    certificate (or exact rate / tuned rate) for a benchmark chain
  table    recompute one of the benchmark tables 1-6 and diff it
  verify   run the oracle suites (kendall | matrix | mc | all)

Exit codes: 0 success, 1 a verification check failed, 2 usage or
validation error. ERGO_CERT_THREADS caps internal parallelism; execution
is currently sequential, which satisfies any cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import bounds, models, tables, verify
from .competitors import coupling_rho
from .errors import ErgoCertError

__all__ = ["main"]

_METHOD_TO_SYMMETRY = {
    "thm1.1": "general",
    "thm1.2": "reversible",
    "thm1.3": "reversible-positive",
}


def _thread_cap() -> int:
    raw = os.environ.get("ERGO_CERT_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer ERGO_CERT_THREADS={raw!r}", file=sys.stderr)
        return 1
    return max(cap, 1)


def _fmt(value, precision: int) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value != value:  # NaN
            return "nan"
        return f"{value:.{precision}g}"
    return str(value)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _render_certificate(cert: bounds.Certificate, fmt: str, precision: int) -> str:
    data = cert.to_dict()
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        keys = [k for k in data if k != "diagnostics"]
        keys += [f"diag_{k}" for k in data["diagnostics"]]
        values = [data[k] for k in data if k != "diagnostics"]
        values += list(data["diagnostics"].values())
        head = ",".join(keys)
        body = ",".join(_fmt(v, precision) for v in values)
        return head + "\n" + body
    lines = [f"{k:<12}{_fmt(v, precision)}" for k, v in data.items() if k != "diagnostics"]
    lines.append("diagnostics:")
    lines += [f"  {k:<16}{_fmt(v, precision)}" for k, v in data["diagnostics"].items()]
    return "\n".join(lines)


def _render_records(records: list[dict], fmt: str, precision: int) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2)
    columns = ["table", "row", "case", "quantity", "published", "computed", "abs_diff", "note"]
    if fmt == "csv":
        out = [",".join(columns)]
        for rec in records:
            out.append(
                ",".join(
                    f'"{rec[c]}"' if c in ("case", "note") else _fmt(rec[c], precision)
                    for c in columns
                )
            )
        return "\n".join(out)
    widths = {c: len(c) for c in columns}
    rows = []
    for rec in records:
        row = {c: _fmt(rec[c], precision) for c in columns}
        rows.append(row)
        for c in columns:
            widths[c] = max(widths[c], len(row[c]))
    header = "  ".join(c.ljust(widths[c]) for c in columns)
    lines = [header, "-" * len(header)]
    lines += ["  ".join(row[c].ljust(widths[c]) for c in columns) for row in rows]
    return "\n".join(lines)


def _render_suites(reports: list, fmt: str, precision: int) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    lines = []
    for rep in reports:
        good, total = rep.counts
        status = "pass" if rep.passed else "FAIL"
        lines.append(f"suite {rep.name}: {status}, {good}/{total}")
        for c in rep.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(
                f"  {mark} {c.name}: measured {_fmt(c.measured, precision)} "
                f"vs bound {_fmt(c.bound, precision)} (margin {_fmt(c.margin, 3)})"
                + (f" [{c.detail}]" if c.detail else "")
            )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _drift_from_args(args) -> bounds.DriftMinorization:
    nu_info = {
        "none": bounds.NU_NONE,
        "concentrated": bounds.NU_CONCENTRATED,
        "v-integral": bounds.NU_V_INTEGRAL,
    }[args.nu]
    return bounds.DriftMinorization(
        lam=args.lam,
        big_k=args.big_k,
        beta=args.beta,
        beta_tilde=1.0 if args.atomic else args.beta_tilde,
        atomic=args.atomic,
        nu_info=nu_info,
        k_tilde=args.k_tilde,
    )


def _cmd_bound(args) -> int:
    if not args.atomic and args.beta_tilde is None:
        raise ErgoCertError("nonatomic input requires --beta-tilde")
    cert = bounds.certificate(_drift_from_args(args), args.symmetry, args.gamma)
    _emit(_render_certificate(cert, args.format, args.precision), args.output)
    return 0


def _model_certificate(args) -> bounds.Certificate:
    symmetry = _METHOD_TO_SYMMETRY[args.method]
    if args.model == "reflecting-walk":
        params = models.reflecting_walk_params(
            models.ReflectingWalk(p=args.p, epsilon=args.epsilon)
        )
    elif args.model == "mh-normal":
        params = models.mh_normal_params(args.d, args.s, _nu_variant(args))
    else:
        params = models.contracting_params(args.theta, args.c)
    return bounds.certificate(params, symmetry, args.gamma)


def _nu_variant(args) -> str:
    return models.MT_MEASURE if args.nu == "mt" else models.INFIMUM_MEASURE


def _require(args, names: list[str]) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise ErgoCertError(f"{args.model} requires --" + ", --".join(missing))


def _cmd_model(args) -> int:
    precision = args.precision
    if args.model == "reflecting-walk":
        _require(args, ["p"])
    elif args.model == "mh-normal":
        if not args.optimize:
            _require(args, ["d", "s"])
    else:
        _require(args, ["theta"])
        if not args.optimize:
            _require(args, ["c"])

    if args.optimize:
        return _cmd_model_optimize(args)

    if args.exact or args.method == "exact":
        if args.model != "reflecting-walk":
            raise ErgoCertError("--exact applies to reflecting-walk only")
        _require(args, ["p", "epsilon"])
        rho_v = models.reflecting_walk_rho_exact(args.p, args.epsilon)
        payload = {"model": args.model, "p": args.p, "epsilon": args.epsilon, "rho_V": rho_v}
        if args.format == "json":
            _emit(json.dumps(payload, indent=2), args.output)
        else:
            _emit(f"rho_V = {_fmt(rho_v, precision)}", args.output)
        return 0

    if args.method == "coupling":
        if args.model == "mh-normal":
            _require(args, ["d", "s"])
            rho = coupling_rho(models.mh_coupling_input(args.d, args.s, _nu_variant(args)))
        elif args.model == "contracting-normal":
            rho = coupling_rho(models.contracting_coupling_input(args.theta, args.c))
        else:
            raise ErgoCertError("coupling is available for mh-normal and contracting-normal")
        payload = {"model": args.model, "method": "coupling", "rho": rho, "one_minus_rho": 1 - rho}
        if args.format == "json":
            _emit(json.dumps(payload, indent=2), args.output)
        else:
            _emit(f"rho = {_fmt(rho, precision)}  (1-rho = {_fmt(1 - rho, precision)})", args.output)
        return 0

    if args.method == "binomial":
        if args.model == "reflecting-walk":
            params = models.reflecting_walk_params(
                models.ReflectingWalk(p=args.p, epsilon=args.epsilon)
            )
            sup_v = 1.0
        elif args.model == "contracting-normal":
            params = models.contracting_params(args.theta, args.c)
            sup_v = 1.0 + args.c * args.c
        else:
            raise ErgoCertError("binomial modification is set up for walks and contracting normals")
        lazy = models.binomial_modification(params, sup_v_on_c=sup_v)
        rho = bounds.rho_positive(lazy).rho
        payload = {
            "model": args.model,
            "method": "binomial-modification",
            "rho_lazy": rho,
            "rho_lazy_squared": rho * rho,
        }
        if args.format == "json":
            _emit(json.dumps(payload, indent=2), args.output)
        else:
            _emit(
                f"rho_lazy = {_fmt(rho, precision)}  rho_lazy^2 = {_fmt(rho * rho, precision)}",
                args.output,
            )
        return 0

    cert = _model_certificate(args)
    _emit(_render_certificate(cert, args.format, args.precision), args.output)
    return 0


def _cmd_model_optimize(args) -> int:
    if args.model == "mh-normal":
        result = models.optimize_mh_tuning(args.method, _nu_variant(args))
        tuned = {"d": result["d"], "s": result["s"]}
    elif args.model == "contracting-normal":
        result = models.optimize_contracting_tuning(args.method, args.theta)
        tuned = {"c": result["c"]}
    else:
        raise ErgoCertError("--optimize applies to mh-normal and contracting-normal")
    payload = {
        "model": args.model,
        "method": args.method,
        "tuned": tuned,
        "rho": result["rho"],
        "one_minus_rho": result["one_minus_rho"],
    }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2), args.output)
    else:
        knobs = ", ".join(f"{k}={_fmt(v, args.precision)}" for k, v in tuned.items())
        _emit(
            f"tuned {knobs}: rho = {_fmt(result['rho'], args.precision)} "
            f"(1-rho = {_fmt(result['one_minus_rho'], args.precision)})",
            args.output,
        )
    return 0


def _cmd_table(args) -> int:
    records = tables.build_table(args.number)
    _emit(_render_records(records, args.format, args.precision), args.output)
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "kendall":
        reports = [verify.run_kendall_suite(seed=args.seed)]
    elif args.suite == "matrix":
        reports = [verify.run_matrix_suite()]
    elif args.suite == "mc":
        reports = [verify.run_mc_suite(seed=args.seed)]
    else:
        reports = verify.run_all_suites(seed=args.seed)
    _emit(_render_suites(reports, args.format, args.precision), args.output)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--output", default=None, help="write to this path instead of stdout")
    parser.add_argument("--precision", type=int, default=6, help="significant digits")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergocert",
        description="Geometric-convergence certificates for Markov chains "
        "from one-step drift and minorization constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="certificate from raw constants")
    p_bound.add_argument("--lambda", dest="lam", type=float, required=True)
    p_bound.add_argument("--K", dest="big_k", type=float, required=True)
    p_bound.add_argument("--beta", type=float, required=True)
    p_bound.add_argument("--beta-tilde", dest="beta_tilde", type=float, default=None)
    p_bound.add_argument("--atomic", action="store_true")
    p_bound.add_argument("--nu", choices=("none", "concentrated", "v-integral"), default="none")
    p_bound.add_argument("--K-tilde", dest="k_tilde", type=float, default=None)
    p_bound.add_argument(
        "--symmetry",
        choices=("general", "reversible", "reversible-positive"),
        default="general",
    )
    p_bound.add_argument("--gamma", type=float, default=None)
    _add_common(p_bound)
    p_bound.set_defaults(func=_cmd_bound)

    p_model = sub.add_parser("model", help="certificate for a benchmark chain")
    p_model.add_argument(
        "model", choices=("reflecting-walk", "mh-normal", "contracting-normal")
    )
    p_model.add_argument("--p", type=float, default=None)
    p_model.add_argument("--epsilon", type=float, default=None)
    p_model.add_argument("--d", type=float, default=None)
    p_model.add_argument("--s", type=float, default=None)
    p_model.add_argument("--nu", choices=("mt", "infimum"), default="mt")
    p_model.add_argument("--theta", type=float, default=None)
    p_model.add_argument("--c", type=float, default=None)
    p_model.add_argument(
        "--method",
        choices=("thm1.1", "thm1.2", "thm1.3", "coupling", "binomial", "exact"),
        default="thm1.2",
    )
    p_model.add_argument("--exact", action="store_true", help="exact walk rate rho_V")
    p_model.add_argument("--optimize", action="store_true", help="tune (d,s) or c to minimise rho")
    p_model.add_argument("--gamma", type=float, default=None)
    _add_common(p_model)
    p_model.set_defaults(func=_cmd_model)

    p_table = sub.add_parser("table", help="recompute a benchmark table")
    p_table.add_argument("number", type=int, choices=tables.TABLE_NUMBERS)
    _add_common(p_table)
    p_table.set_defaults(func=_cmd_table)

    p_verify = sub.add_parser("verify", help="run oracle suites")
    p_verify.add_argument("suite", choices=("kendall", "matrix", "mc", "all"))
    _add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    _thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ErgoCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
