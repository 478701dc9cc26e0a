"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from quasicommit import solve
from quasicommit.bifurcation import EPS_GRID, Q_GRID, eigenvalue_scan, verify, verify_passed, write_scan_csv
from quasicommit.calibration import GALI2015, DomainError, StructuralParams, load_config
from quasicommit.simulation import (
    DEFAULT_HORIZON,
    WELFARE_HORIZON,
    impulse_response,
    path_to_dict,
    robustness_experiment,
    write_path_csv,
)
from quasicommit.welfare import TABLE_EPSILONS, TABLE_QS, format_table, welfare_table, write_table_csv

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

DEFAULT_Q_GRID = (0.0, 1e-7, 0.5, 1.0)
ROBUSTNESS_Q_GRID = (1e-7, 0.0)
DEFAULT_OUT = "results"
RECORD_FIELDS = ("regime", "q", "lambda", "f_pi", "f_u", "p_pi", "p_u", "anchor_pi", "anchor_x",
                 "cl_11", "cl_12", "cl_21", "cl_22")


class ConfigError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _q_label(q: float) -> str:
    return f"{q:g}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="flat JSON file of structural parameters")
    common.add_argument("--epsilon", type=_float_list, help="elasticity (comma list for welfare-table/scan)")
    common.add_argument("--out", type=Path, help="output file (solve) or directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="quasicommit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="policy solution records")
    p.add_argument("--q", type=float, action="append", help="credibility (repeatable)")
    p.add_argument("--q-grid", type=_float_list)

    p = sub.add_parser("irf", parents=[common], help="impulse responses, one file per q")
    p.add_argument("--q", type=float, action="append")
    p.add_argument("--q-grid", type=_float_list)
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)

    p = sub.add_parser("robustness", parents=[common], help="misspecified-anchor experiments")
    p.add_argument("--q", type=float, action="append")
    p.add_argument("--q-grid", type=_float_list)
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument("--error", type=float, default=0.1, help="anchor error fraction; both signs are run")

    p = sub.add_parser("welfare-table", parents=[common], help="relative welfare losses")
    p.add_argument("--q-grid", type=_float_list)
    p.add_argument("--periods", type=int, default=WELFARE_HORIZON)

    p = sub.add_parser("scan", parents=[common], help="eigenvalue scan over (q, eps)")
    p.add_argument("--q-grid", type=_float_list)

    p = sub.add_parser("verify", parents=[common], help="run the claim suite")
    p.add_argument("--q-grid", type=_float_list)
    return parser


def _params(args: argparse.Namespace) -> StructuralParams:
    params = GALI2015
    if args.config:
        try:
            params = load_config(args.config)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}") from None
    if args.epsilon and args.command in ("solve", "irf", "robustness"):
        if len(args.epsilon) != 1:
            raise ConfigError("--epsilon takes a single value for this command")
        params = params.with_epsilon(args.epsilon[0])
    return params


def _qs(args: argparse.Namespace, default: Sequence[float]) -> list[float]:
    qs = list(getattr(args, "q", None) or []) + list(args.q_grid or [])
    qs = qs or list(default)
    for q in qs:
        if not 0.0 <= q <= 1.0:
            raise ConfigError("q must lie in [0,1]")
    return qs


def _out_dir(args: argparse.Namespace) -> Path:
    out = args.out or Path(DEFAULT_OUT)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _file(stem: Path, ext: str) -> Path:
    # q labels contain dots, so Path.with_suffix would truncate them
    return stem.parent / f"{stem.name}.{ext}"


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    params = _params(args)
    records = [solve(params, q).to_record() for q in _qs(args, DEFAULT_Q_GRID)]
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n", restval="")
        writer.writeheader()
        for r in records:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        text = buf.getvalue()
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_irf(args: argparse.Namespace) -> int:
    params = _params(args)
    out = _out_dir(args)
    for q in _qs(args, DEFAULT_Q_GRID):
        path = impulse_response(solve(params, q), args.horizon, params.u0)
        stem = out / f"irf_q{_q_label(q)}"
        if args.format == "json":
            _write_text(_file(stem, "json"), json.dumps(path_to_dict(path), indent=2) + "\n")
        else:
            write_path_csv(_file(stem, "csv"), path)
        print(f"q={_q_label(q)}: pi0={path.pi[0]:.4f} -> {stem.name}.{args.format}")
    return EXIT_OK


def cmd_robustness(args: argparse.Namespace) -> int:
    params = _params(args)
    out = _out_dir(args)
    for q in _qs(args, ROBUSTNESS_Q_GRID):
        sol = solve(params, q)
        for err in (abs(args.error), -abs(args.error)):
            res = robustness_experiment(sol, args.horizon, params.u0, err)
            stem = out / f"robustness_q{_q_label(q)}_err{err:+g}"
            if args.format == "json":
                _write_text(_file(stem, "json"),
                            json.dumps(path_to_dict(res.perturbed, res.rel_gap), indent=2) + "\n")
            else:
                write_path_csv(_file(stem, "csv"), res.perturbed, res.rel_gap)
            print(f"q={_q_label(q)} error={err:+g}: final rel_gap={100 * res.rel_gap[-1]:.2f}%")
        base = out / f"robustness_q{_q_label(q)}_baseline"
        baseline = impulse_response(sol, args.horizon, params.u0)
        if args.format == "json":
            _write_text(_file(base, "json"), json.dumps(path_to_dict(baseline), indent=2) + "\n")
        else:
            write_path_csv(_file(base, "csv"), baseline)
    return EXIT_OK


def cmd_welfare_table(args: argparse.Namespace) -> int:
    params = _params(args)
    eps = args.epsilon or list(TABLE_EPSILONS)
    table = welfare_table(params, eps, _qs(args, TABLE_QS), args.periods, params.u0)
    out = _out_dir(args)
    if args.format == "json":
        payload = [
            {"epsilon": r.epsilon, "kappa": r.kappa, "weight_x": r.weight_x, "W_commit": r.W_commit,
             "entries": [{"q": c.q, "W": c.W, "w": c.w, "error": c.error} for c in r.entries]}
            for r in table.rows
        ]
        _write_text(out / "welfare_table.json", json.dumps(payload, indent=2) + "\n")
    else:
        write_table_csv(out / "welfare_table.csv", table)
    print(format_table(table))
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    params = _params(args)
    scan = eigenvalue_scan(params, _qs(args, Q_GRID), args.epsilon or EPS_GRID)
    out = _out_dir(args)
    if args.format == "json":
        rows = [
            {"q": q, "epsilon": e, "lambda": float(scan.lam[i, j]), "f_pi": float(scan.f_pi[i, j]),
             "anchor_pi": float(scan.anchor_pi[i, j]), "regime": scan.regime_class[i, j]}
            for i, q in enumerate(scan.q_grid) for j, e in enumerate(scan.eps_grid)
        ]
        _write_text(out / "scan.json", json.dumps(rows, indent=2) + "\n")
    else:
        write_scan_csv(out / "scan.csv", scan)
    for name, ok in scan.flags.items():
        print(f"{name}: {ok}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    params = _params(args)
    claims = verify(params, _qs(args, Q_GRID), args.epsilon or EPS_GRID)
    for c in claims:
        print(c.line())
    ok = verify_passed(claims)
    print(f"{sum(c.passed for c in claims)}/{len(claims)} claims passed")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


COMMANDS = {
    "solve": cmd_solve,
    "irf": cmd_irf,
    "robustness": cmd_robustness,
    "welfare-table": cmd_welfare_table,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
