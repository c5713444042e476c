#!/usr/bin/env python
# coding: utf-8

"""
Command-line entry point.

Usage:
    python cli.py verify --identity eq13,eq14 --n-max 20 --q 1/2,2/3
    python cli.py verify --identity all --n-max 8 --json
    python cli.py eval --string 2,1 --q 1/2 --eps 1e-30 --digits 30
    python cli.py compositions --s 1,1 --ending one
    python cli.py limit --string 2,1 --q 9/10,99/100,999/1000

Exit codes: 0 all checks pass, 1 a check failed or the term cap was hit,
2 invalid flags, grids, strings or targets. Results go to stdout (one JSON
object per line with --json); progress lines go to stderr.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd
from dotenv import dotenv_values

import config
from identities import (
    IdentityId,
    InvalidGridError,
    ReconstructionError,
    resolve_ranges,
    validate_reconstructions,
    verify,
)
from qkernel import as_q_point, memo_stats
from series import TermCapExceededError, limit_probe, two_one_eval
from strings import enumerate_compositions, index_string, parse_two_one
from utils import format_rational, log_metric, log_run, metrics, parse_rational, render_decimal


GRID_KEYS = ("n_min", "n_max", "l_min", "l_max", "k_max", "a_max", "b_min", "b_max", "m_max", "s_max")
FILE_KEYS = {"Q", "EPS", "DIGITS", "FORMAT", "IDENTITY"} | {key.upper() for key in GRID_KEYS}


def _diag(message):
    print(message, file=sys.stderr)


def _emit_json(payload):
    print(json.dumps(payload, separators=(",", ":")))


@dataclass
class RunConfig:
    command: str
    identities: list = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    q_points: list | None = None
    eps: Fraction | None = None
    digits: int = config.DEFAULT_DIGITS
    output_format: str = "text"
    config_path: str | None = None
    skip_reconstruction: bool = False
    string: str | None = None
    s: tuple = ()
    ending: str = "one"

    @property
    def json(self):
        return self.output_format == "json"


# === CONFIG RESOLUTION ===
def _read_config_file(path):
    if not os.path.isfile(path):
        raise ValueError(f"Config file not found: {path}")
    values = {key.strip().upper(): value for key, value in dotenv_values(path).items()}
    unknown = sorted(set(values) - FILE_KEYS)
    if unknown:
        raise ValueError(f"Unknown config keys in {path}: {', '.join(unknown)}")
    return values


def _int_value(name, raw):
    try:
        return int(str(raw).strip())
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


def parse_identities(text):
    text = (text or "all").strip().lower()
    if text == "all":
        return list(IdentityId)
    chosen = []
    for token in text.split(","):
        token = token.strip().upper()
        if not token:
            continue
        try:
            chosen.append(IdentityId(token))
        except ValueError as exc:
            raise InvalidGridError(f"Unknown identity: {token!r}") from exc
    if not chosen:
        raise InvalidGridError("No identity selected")
    return chosen


def parse_q_points(text):
    points = []
    for item in str(text).split(","):
        if item.strip():
            points.append(as_q_point(parse_rational(item.strip(), "q")))
    if not points:
        raise ValueError("--q needs at least one rational point")
    return points


def build_run_config(args):
    """Resolve flags over the --config file over built-in defaults."""
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(flag_value, file_key):
        if flag_value is not None:
            return flag_value
        return file_values.get(file_key)

    run = RunConfig(command=args.command, config_path=getattr(args, "config", None))

    q_text = pick(getattr(args, "q", None), "Q")
    run.q_points = parse_q_points(q_text) if q_text is not None else None

    eps_text = pick(getattr(args, "eps", None), "EPS")
    if eps_text is not None:
        run.eps = parse_rational(eps_text, "eps")

    digits = pick(getattr(args, "digits", None), "DIGITS")
    if digits is not None:
        run.digits = _int_value("digits", digits)
        if run.digits < 1:
            raise ValueError(f"digits must be >= 1, got {run.digits}")

    fmt = "json" if getattr(args, "json", False) else file_values.get("FORMAT", "text")
    if fmt not in ("text", "json"):
        raise ValueError(f"FORMAT must be 'text' or 'json', got {fmt!r}")
    run.output_format = fmt

    for key in GRID_KEYS:
        value = pick(getattr(args, key, None), key.upper())
        if value is not None:
            run.grid[key] = _int_value(key, value)

    if args.command == "verify":
        run.identities = parse_identities(pick(args.identity, "IDENTITY"))
        run.skip_reconstruction = args.skip_reconstruction
    if args.command in ("eval", "limit"):
        run.string = args.string
    if args.command == "compositions":
        run.s = tuple(_int_value("s", item) for item in args.s.split(",") if item.strip())
        run.ending = args.ending
    return run


# === COMMANDS ===
def _print_witnesses(report, digits):
    for witness in report.witnesses:
        params = " ".join(f"{key}={value}" for key, value in witness.params.items())
        q = "1" if witness.q is None else format_rational(witness.q)
        print(f"❌ {witness.identity} {params} q={q}")
        print(f"   lhs = {render_decimal(witness.lhs, digits)}")
        print(f"   rhs = {render_decimal(witness.rhs, digits)}")


def cmd_verify(run):
    for identity in run.identities:
        resolve_ranges(identity, run.grid)

    reports = []
    if not run.skip_reconstruction:
        _diag("🔍 Checking identity reconstructions...")
        try:
            reports.append(validate_reconstructions(run.q_points))
        except ReconstructionError as exc:
            _diag(f"❌ {exc}")
            reports.append(exc.report)

    if not reports or reports[0].passed:
        for identity in run.identities:
            _diag(f"🔍 Verifying {identity.value}...")
            reports.append(verify(identity, run.grid, run.q_points))

    ok = all(report.passed for report in reports)
    if run.json:
        for report in reports:
            for result in report.results:
                _emit_json(result.to_json())
    else:
        table = pd.DataFrame([report.summary() for report in reports])
        print(table.to_string(index=False))
        for report in reports:
            _print_witnesses(report, run.digits)

    _diag("✅ All identities hold exactly." if ok else "❌ Verification failed.")
    return 0 if ok else 1


def cmd_eval(run):
    s = parse_two_one(run.string)
    label = "" if s is None else s.to_text()
    eps = run.eps if run.eps is not None else config.DEFAULT_EPS
    for q in run.q_points or [as_q_point(point) for point in config.DEFAULT_Q_POINTS]:
        value = two_one_eval(s, q, eps)
        if run.json:
            _emit_json({"string": label, "q": format_rational(q), **value.to_json(run.digits)})
        else:
            print(f"zeta*_q[{label}] at q={format_rational(q)}")
            print(f"  value      = {render_decimal(value.partial_sum, run.digits)}")
            print(f"  tail bound = {render_decimal(value.tail_bound, run.digits)}")
            print(f"  terms      = {value.terms_used}")
    return 0


def cmd_compositions(run):
    s = index_string(run.s, run.ending)
    rows = [comp.to_dict() for comp in enumerate_compositions(s)]
    if run.json:
        for row in rows:
            _emit_json(row)
    else:
        table = pd.DataFrame(
            [{"mask": row["mask"] or "-", "p": tuple(row["p"]), "p_tilde": tuple(row["p_tilde"])} for row in rows]
        )
        print(table.to_string(index=False))
    return 0


def cmd_limit(run):
    s = parse_two_one(run.string)
    rows = limit_probe(s, run.q_points, run.eps)
    if run.json:
        for row in rows:
            _emit_json({"string": s.to_text(), **row.to_json(run.digits)})
    else:
        table = pd.DataFrame(
            [
                {
                    "q": format_rational(row.q),
                    "value": render_decimal(row.value.partial_sum, run.digits),
                    "target": render_decimal(row.target.partial_sum, run.digits),
                    "|difference|": render_decimal(row.distance, run.digits),
                }
                for row in rows
            ]
        )
        print(table.to_string(index=False))
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "eval": cmd_eval,
    "compositions": cmd_compositions,
    "limit": cmd_limit,
}


# === PARSER ===
def _add_common(parser):
    parser.add_argument("--q", help="comma-separated exact rationals, e.g. 1/2,7/10")
    parser.add_argument("--eps", help="error budget, e.g. 1e-30")
    parser.add_argument("--digits", help="decimal digits to print")
    parser.add_argument("--json", action="store_true", help="one JSON object per line on stdout")
    parser.add_argument("--config", help="KEY=value file (Q, EPS, DIGITS, N_MAX, ...)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Exact q-analogue multiple harmonic sums: identity checks and two-one series.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify_parser = subparsers.add_parser("verify", help="Verify finite identities over a grid.")
    _add_common(verify_parser)
    verify_parser.add_argument("--identity", help="eq13,eq14,... or all (default)")
    for key in GRID_KEYS:
        verify_parser.add_argument(f"--{key.replace('_', '-')}", dest=key, type=int)
    verify_parser.add_argument("--skip-reconstruction", action="store_true")

    eval_parser = subparsers.add_parser("eval", help="Evaluate a two-one string with a tail bound.")
    _add_common(eval_parser)
    eval_parser.add_argument("--string", required=True, help='e.g. "2,2,1,2,1"; "" is the empty string')

    comp_parser = subparsers.add_parser("compositions", help="List the composition strings of a two-one string.")
    _add_common(comp_parser)
    comp_parser.add_argument("--s", required=True, help="exponents s_1,...,s_m(,s_m+1)")
    comp_parser.add_argument("--ending", choices=("one", "two"), default="one")

    limit_parser = subparsers.add_parser("limit", help="Probe the q -> 1 limit against the classical value.")
    _add_common(limit_parser)
    limit_parser.add_argument("--string", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    status = "success"
    try:
        run = build_run_config(args)
        code = COMMANDS[args.command](run)
        status = "success" if code == 0 else "failed"
    except (TermCapExceededError, ReconstructionError) as exc:
        _diag(f"❌ {exc}")
        status, code = "failed", 1
    except ValueError as exc:
        _diag(f"❌ {exc}")
        status, code = "usage_error", 2

    log_metric("memo", memo_stats())
    log_metric("exit_code", code)
    log_run(args.command, status, exit_code=code, metrics=metrics)
    return code


if __name__ == "__main__":
    sys.exit(main())
