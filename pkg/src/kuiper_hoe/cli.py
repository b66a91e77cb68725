"""Command line front end.

Subcommands: pair, utq, ltq, invcdf, cdf, test, table, simulate.
Exit codes: 0 success/accept, 1 test rejected, 2 usage or domain error,
3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys

import numpy as np

from .gof import EdfScheme, SampleSet, kuiper_test
from .montecarlo import SimConfig, normal_cdf, simulate_type1
from .series import cdf_vn, utp
from .solver import (ConvergenceError, SolverConfig, kuiper_inv_cdf,
                     kuiper_ltq, kuiper_pair_solver, kuiper_utq)

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_NOCONV = 3

DEFAULT_TABLE_N = "6,7,8,9,10,20,30,40,50,100,1000000"


def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}f}"


def _print_kv(pairs, fmt: str, precision: int) -> None:
    """Render a flat record as aligned text, one CSV row, or JSON."""
    if fmt == "json":
        print(json.dumps({k: v for k, v in pairs}, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([k for k, _ in pairs])
        writer.writerow([repr(v) if isinstance(v, float) else v for _, v in pairs])
        print(buf.getvalue(), end="")
    else:
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            shown = _fmt(v, precision) if isinstance(v, float) else v
            print(f"{k:<{width}}  {shown}")


def _parse_int_list(text: str, flag: str) -> list:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ValueError(f"{flag} needs at least one value, got {text!r}")
    return [int(s) for s in items]


_DIST_RE = re.compile(r"^\s*(\w+)\s*\(([^)]*)\)\s*$")


def parse_dist_spec(spec: str):
    """Turn a distribution spec into a CDF callable.

    Accepted forms: normal(mu,sigma), uniform(a,b), or table:PATH where
    PATH holds a two-column monotone CDF table (linear interpolation).
    """
    if spec.startswith("table:"):
        return _load_cdf_table(spec[len("table:"):])
    m = _DIST_RE.match(spec)
    if not m:
        raise ValueError(f"cannot parse distribution spec {spec!r}; expected "
                         f"name(p1,p2) or table:PATH")
    name = m.group(1).lower()
    params = [float(p) for p in m.group(2).split(",")] if m.group(2).strip() else []
    if name == "normal":
        if len(params) != 2 or params[1] <= 0:
            raise ValueError("normal distribution needs (mu, sigma) with sigma > 0")
        mu, sigma = params
        return lambda x: normal_cdf((x - mu) / sigma)
    if name == "uniform":
        if len(params) != 2 or params[0] >= params[1]:
            raise ValueError("uniform distribution needs (a, b) with a < b")
        a, b = params
        return lambda x: min(1.0, max(0.0, (x - a) / (b - a)))
    raise ValueError(f"unknown distribution {name!r}; expected normal, uniform, "
                     f"or table:PATH")


def _load_cdf_table(path: str):
    xs, ps = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, "
                                 f"got {line!r}")
            xs.append(float(parts[0]))
            ps.append(float(parts[1]))
    if len(xs) < 2:
        raise ValueError(f"{path}: a CDF table needs at least two rows")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError(f"{path}: x column must be strictly increasing")
    if any(b < a for a, b in zip(ps, ps[1:])) or ps[0] < 0 or ps[-1] > 1:
        raise ValueError(f"{path}: probability column must be nondecreasing "
                         f"within [0, 1]")
    xs_arr, ps_arr = np.asarray(xs), np.asarray(ps)
    return lambda x: float(np.interp(x, xs_arr, ps_arr, left=ps_arr[0],
                                     right=ps_arr[-1]))


def read_sample_file(path: str, csv_column: str | None = None) -> list:
    """One value per line ('#' comments allowed), or a CSV column."""
    if csv_column is None:
        values = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                try:
                    values.append(float(text))
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: not a number: {text!r}")
        return values
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty CSV file")
    if csv_column.lstrip("-").isdigit():
        idx = int(csv_column)
        start = 0
    else:
        header = rows[0]
        if csv_column not in header:
            raise ValueError(f"{path}: no column named {csv_column!r} in header "
                             f"{header}")
        idx = header.index(csv_column)
        start = 1
    values = []
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if not row:
            continue
        try:
            cell = row[idx]
        except IndexError:
            raise ValueError(f"{path}:{lineno}: row has no column {idx}")
        if start == 0 and lineno == 1:
            try:
                values.append(float(cell))
            except ValueError:
                continue  # tolerate a header row above an index-selected column
        else:
            try:
                values.append(float(cell))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a number: {cell!r}")
    if not values:
        raise ValueError(f"{path}: no usable values in column {csv_column!r}")
    return values


def _solver_config(args) -> SolverConfig:
    method = getattr(args, "method", "newton")
    return SolverConfig(method=method)


def cmd_pair(args) -> int:
    pair = kuiper_pair_solver(args.alpha, args.n, args.k, _solver_config(args))
    if args.format == "table":
        p = args.precision
        print(f"({pair.c:.{p}f}, {pair.v:.{p}f})")
    else:
        _print_kv([("alpha", pair.alpha), ("n", pair.n), ("k", pair.k),
                   ("method", args.method), ("c", pair.c), ("v", pair.v),
                   ("iterations", pair.iterations), ("residual", pair.residual)],
                  args.format, args.precision)
    return EXIT_OK


def _cmd_quantile(args, value: float, label: str) -> int:
    if args.format == "table":
        print(_fmt(value, args.precision))
    else:
        _print_kv([("alpha" if label != "x" else "x", getattr(args, label)),
                   ("n", args.n), ("k", args.k), ("v", value)],
                  args.format, args.precision)
    return EXIT_OK


def cmd_utq(args) -> int:
    return _cmd_quantile(args, kuiper_utq(args.alpha, args.n, args.k), "alpha")


def cmd_ltq(args) -> int:
    return _cmd_quantile(args, kuiper_ltq(args.alpha, args.n, args.k), "alpha")


def cmd_invcdf(args) -> int:
    return _cmd_quantile(args, kuiper_inv_cdf(args.x, args.n, args.k), "x")


def cmd_cdf(args) -> int:
    if (args.v is None) == (args.c is None):
        raise ValueError("give exactly one of --v or --c")
    if args.v is not None:
        p = cdf_vn(args.v, args.n, args.k)
        c = args.v * math.sqrt(args.n)
    else:
        c = args.c
        p = cdf_vn(args.c / math.sqrt(args.n), args.n, args.k)
    tail = utp(c, args.n, args.k)
    pairs = [("n", args.n), ("k", args.k), ("c", c), ("cdf", float(p)),
             ("utp", float(tail))]
    if p.warning:
        pairs.append(("warning", p.warning))
    _print_kv(pairs, args.format, args.precision)
    return EXIT_OK


def cmd_test(args) -> int:
    cdf = parse_dist_spec(args.dist)
    values = read_sample_file(args.file, args.csv_column)
    sample = SampleSet(tuple(values))
    scheme = EdfScheme.from_string(args.scheme)
    result = kuiper_test(sample, cdf, alpha=args.alpha, k=args.k, scheme=scheme)
    decision = "reject" if result.reject else "accept"
    pairs = [("n", sample.n), ("d_plus", result.d_plus),
             ("d_minus", result.d_minus), ("v_n", result.v_n),
             ("v_critical", result.v_critical),
             ("p_value", float(result.p_value)), ("alpha", result.alpha),
             ("k", result.k), ("scheme", scheme.value), ("decision", decision)]
    _print_kv(pairs, args.format, args.precision)
    return EXIT_REJECT if result.reject else EXIT_OK


def cmd_table(args) -> int:
    n_list = _parse_int_list(args.n, "--n")
    k_list = _parse_int_list(args.k, "--k")
    cfg = _solver_config(args)
    cells = {}
    for n in n_list:
        for k in k_list:
            try:
                pair = kuiper_pair_solver(args.alpha, n, k, cfg)
                cells[n, k] = (pair.c, pair.v)
            except (ValueError, ConvergenceError):
                cells[n, k] = None
    p = args.precision
    if args.format == "table":
        width = 2 * p + 10
        head = "".join(f"{'k=' + str(k):>{width}}" for k in k_list)
        print(f"alpha = {args.alpha}")
        print(f"{'n':>9}{head}")
        for n in n_list:
            row = ""
            for k in k_list:
                cell = cells[n, k]
                row += (f"{'x':>{width}}" if cell is None else
                        f"{f'({cell[0]:.{p}f}, {cell[1]:.{p}f})':>{width}}")
            print(f"{n:>9}{row}")
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "n", "k", "c", "v"])
        for n in n_list:
            for k in k_list:
                cell = cells[n, k]
                writer.writerow([repr(args.alpha), n, k] +
                                (["", ""] if cell is None
                                 else [repr(cell[0]), repr(cell[1])]))
        print(buf.getvalue(), end="")
    else:
        payload = {"alpha": args.alpha,
                   "cells": [{"n": n, "k": k,
                              "c": None if cells[n, k] is None else cells[n, k][0],
                              "v": None if cells[n, k] is None else cells[n, k][1]}
                             for n in n_list for k in k_list]}
        print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_simulate(args) -> int:
    k_list = _parse_int_list(args.k, "--k")
    comparators = tuple(s.strip() for s in args.comparators.split(",") if s.strip())
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("KUIPER_SEED", "0"))
    cfg = SimConfig(n=args.n, alpha=args.alpha, k_set=tuple(k_list),
                    n_rep=args.nrep, seed=seed,
                    scheme=EdfScheme.from_string(args.scheme),
                    comparators=comparators, workers=args.workers)
    result = simulate_type1(cfg)
    if args.format == "csv":
        print(result.to_csv(), end="")
    elif args.format == "json":
        print(result.to_json())
    else:
        p = args.precision
        print(f"n={cfg.n} alpha={cfg.alpha} n_rep={cfg.n_rep} seed={cfg.seed} "
              f"scheme={cfg.scheme.value}")
        for method, rate in result.p_type1.items():
            ci = result.ci_halfwidth[method]
            print(f"  {method:<10} p_type1={rate:.{p}f}  ci95=+/-{ci:.{p}f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kuiper-hoe",
        description="Kuiper V_n statistic: quantiles, tables, tests, simulations")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["table", "csv", "json"],
                       default="table")
        p.add_argument("--precision", type=int, default=4,
                       help="decimal places for table output (default 4)")

    p = sub.add_parser("pair", help="solve the (c, v) critical pair")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--method", choices=["direct", "newton"], default="newton")
    add_common(p)
    p.set_defaults(func=cmd_pair)

    for name, fn in (("utq", cmd_utq), ("ltq", cmd_ltq)):
        p = sub.add_parser(name, help=f"{name.upper()} of V_n")
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=1)
        add_common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("invcdf", help="inverse CDF of V_n")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_invcdf)

    p = sub.add_parser("cdf", help="CDF and UTP at a statistic value")
    p.add_argument("--v", type=float, default=None, help="raw statistic V_n")
    p.add_argument("--c", type=float, default=None, help="scaled statistic K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=5)
    add_common(p)
    p.set_defaults(func=cmd_cdf)

    p = sub.add_parser("test", help="goodness-of-fit test on a data file")
    p.add_argument("--file", required=True)
    p.add_argument("--dist", required=True,
                   help="normal(mu,sigma), uniform(a,b), or table:PATH")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--scheme", default="stephens_mixed")
    p.add_argument("--csv-column", default=None,
                   help="read this CSV column (name or 0-based index)")
    add_common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("table", help="regenerate a critical-value grid")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", default=DEFAULT_TABLE_N, help="comma list of n")
    p.add_argument("--k", default="1,2,3,4,5", help="comma list of k")
    p.add_argument("--method", choices=["direct", "newton"], default="newton")
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="Type I error Monte Carlo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--k", default="1,2,3,4,5", help="comma list of k")
    p.add_argument("--nrep", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: KUIPER_SEED env var or 0)")
    p.add_argument("--scheme", default="scheme0")
    p.add_argument("--comparators", default="",
                   help="comma list from {ks, stephens}")
    p.add_argument("--workers", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
