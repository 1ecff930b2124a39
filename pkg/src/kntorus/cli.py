"""Deterministic command line front end.

Subcommands:
  params      geometry report: half-period values, invariants, lambdas,
              moduli parameter, separation time
  verify      run one invariant suite (or all) and report pass/fail checks
  table       emit a structure-constant or cocycle table (+ reconciliation)
  levellines  emit crossing points of the string time function

Exit status: 0 all checks pass, 1 a verification check failed (report is
still written), 2 usage or configuration error.  Output is byte-identical
across repeated runs with identical arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fock, propagation
from .algebra import build_structure_table
from .basis import WITT_PARAMS, AlgebraParams, formal_params, lambda_coefficients
from .cocycle import build_cocycle_table, reconciliation_report
from .config import TorusConfig
from .elliptic import half_period_values
from .errors import KNTorusError
from .verify import SUITES, verify_suite


def _c(value: complex) -> list[float]:
    return [value.real, value.imag]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kntorus",
        description="Krichever-Novikov algebra of a three-punctured torus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_geometry(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tau-re", type=float, default=0.0)
        p.add_argument("--tau-im", type=float, default=1.0)
        p.add_argument("--q-re", type=float, default=0.2)
        p.add_argument("--q-im", type=float, default=0.0)
        p.add_argument("--two-point", action="store_true")
        p.add_argument("--tol", type=float, default=1e-10)

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", type=str, default=None, help="file path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_params = sub.add_parser("params", help="report the derived scalars of a configuration")
    add_geometry(p_params)
    add_output(p_params)

    p_verify = sub.add_parser("verify", help="run an invariant suite")
    p_verify.add_argument("suite", choices=(*SUITES, "all"))
    add_geometry(p_verify)
    p_verify.add_argument("--window", type=int, default=6)
    add_output(p_verify)

    p_table = sub.add_parser("table", help="emit structure constants or the cocycle")
    p_table.add_argument("kind", choices=("brackets", "cocycle"))
    add_geometry(p_table)
    p_table.add_argument("--window", type=int, default=6)
    p_table.add_argument("--formal-witt", action="store_true", help="formal (1,0,0,0) parameters")
    p_table.add_argument("--lam5", type=float, nargs=2, metavar=("RE", "IM"))
    p_table.add_argument("--lam6", type=float, nargs=2, metavar=("RE", "IM"))
    p_table.add_argument("--lam7", type=float, nargs=2, metavar=("RE", "IM"))
    p_table.add_argument("--indexing", choices=("original", "shifted"), default="original")
    add_output(p_table)

    p_level = sub.add_parser("levellines", help="sample a level line of the time function")
    add_geometry(p_level)
    p_level.add_argument("--u", type=float, required=True)
    p_level.add_argument("--samples", type=int, default=64)
    add_output(p_level)

    return parser


def _config_from_args(args: argparse.Namespace) -> TorusConfig:
    if args.tol <= 0 or args.tol > 1e-4:
        raise ValueError(f"tol must lie in (0, 1e-4], got {args.tol}")
    return TorusConfig(
        tau=complex(args.tau_re, args.tau_im),
        q=complex(args.q_re, args.q_im),
        tol=args.tol,
        two_point=args.two_point,
    )


def _formal_from_args(args: argparse.Namespace) -> AlgebraParams | None:
    if args.formal_witt:
        return WITT_PARAMS
    if args.lam5 or args.lam6 or args.lam7:
        def pick(pair):
            return complex(pair[0], pair[1]) if pair else 0j

        return formal_params(pick(args.lam5), pick(args.lam6), pick(args.lam7))
    return None


def _config_dict(args: argparse.Namespace, cfg: TorusConfig | None) -> dict:
    out: dict = {"command": args.command}
    if cfg is not None:
        out.update(
            {
                "tau": _c(cfg.tau),
                "q": _c(cfg.q),
                "two_point": cfg.two_point,
                "tol": cfg.tol,
            }
        )
    if getattr(args, "window", None) is not None:
        out["window"] = args.window
    return out


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _emit_json(payload: dict, path: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2), path)


def _cmd_params(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    hp = half_period_values(cfg)
    lam = lambda_coefficients(cfg)
    mu = propagation.mu_modulus(cfg)
    sep = propagation.separation_time(cfg)
    ps = propagation.puncture_set(cfg)
    results = {
        "e1": _c(hp.e1),
        "e2": _c(hp.e2),
        "e3": _c(hp.e3),
        "g2": _c(hp.g2),
        "g3": _c(hp.g3),
        "p_q": _c(ps.p_q),
        "lambda": {
            "lam4": _c(lam.lam4),
            "lam5": _c(lam.lam5),
            "lam6": _c(lam.lam6),
            "lam7": _c(lam.lam7),
            "provenance": lam.provenance,
        },
        "mu": _c(mu.mu),
        "abs_mu": mu.abs_mu,
        "separation_time": sep,
    }
    if args.format == "csv":
        rows = ["name,re,im"]
        for name in ("e1", "e2", "e3", "g2", "g3", "p_q", "mu"):
            re, im = results[name]
            rows.append(f"{name},{re!r},{im!r}")
        for name in ("lam4", "lam5", "lam6", "lam7"):
            re, im = results["lambda"][name]
            rows.append(f"{name},{re!r},{im!r}")
        rows.append(f"abs_mu,{mu.abs_mu!r},0.0")
        rows.append(f"separation_time,{sep!r},0.0")
        _emit("\n".join(rows), args.output)
    else:
        _emit_json({"config": _config_dict(args, cfg), "results": results, "checks": []}, args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.window < 1:
        raise ValueError("window must be >= 1")
    checks = verify_suite(args.suite, cfg, args.window)
    payload = {
        "config": _config_dict(args, cfg),
        "results": {"suite": args.suite, "all_passed": all(c.passed for c in checks)},
        "checks": [
            {
                "name": c.name,
                "status": c.status,
                "max_residual": c.max_residual,
                "tolerance": c.tolerance,
            }
            for c in checks
        ],
    }
    _emit_json(payload, args.output)
    return 0 if all(c.passed for c in checks) else 1


def _cmd_table(args: argparse.Namespace) -> int:
    if args.window < 1:
        raise ValueError("window must be >= 1")
    params = _formal_from_args(args)
    cfg = None
    if params is None:
        cfg = _config_from_args(args)
        params = lambda_coefficients(cfg)
    if args.kind == "brackets":
        table = build_structure_table(params, args.window, indexing=args.indexing)
        if args.format == "csv":
            _emit("\n".join(table.to_csv_rows()), args.output)
        else:
            payload = {
                "config": _config_dict(args, cfg),
                "results": table.to_json_dict(),
                "checks": [],
            }
            _emit_json(payload, args.output)
        return 0
    convention = fock.determine_sign_convention()
    table = build_cocycle_table(params, args.window, method="sum", sign_convention=convention)
    if args.format == "csv":
        _emit("\n".join(table.to_csv_rows()), args.output)
    else:
        results = table.to_json_dict()
        results["reconciliation"] = reconciliation_report(params, args.window)
        payload = {
            "config": _config_dict(args, cfg),
            "results": results,
            "checks": [],
        }
        _emit_json(payload, args.output)
    return 0


def _cmd_levellines(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.samples < 16:
        raise ValueError("samples must be >= 16")
    sample = propagation.level_line_samples(cfg, args.u, args.samples)
    if args.format == "csv":
        rows = ["u,re,im"]
        rows.extend(f"{sample.u!r},{p.real!r},{p.imag!r}" for p in sample.points)
        _emit("\n".join(rows), args.output)
    else:
        payload = {
            "config": _config_dict(args, cfg),
            "results": {
                "u": sample.u,
                "count": len(sample.points),
                "points": [_c(p) for p in sample.points],
            },
            "checks": [],
        }
        _emit_json(payload, args.output)
    return 0


_COMMANDS = {
    "params": _cmd_params,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "levellines": _cmd_levellines,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (KNTorusError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
