"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 numerical or convergence failure.
Floating-point output is serialized with 15 significant digits, and
identical requests (including seeds) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import verify as verify_module
from .bounds import TSIRELSON, chsh_bounds, ghz_chsh_maximum, ghz_correlation_matrix
from .correlation import chsh_expectation_direct, correlation_matrix
from .errors import InvalidDimension, NumericalError, ValidationError
from .optimizer import SeesawConfig, ghz_optimal_settings, seesaw_maximize
from .representation import build_gellmann_basis
from .states import ghz_state, load_state_file, random_two_qudit_state


def _round15(x: float) -> float:
    return float(f"{float(x):.15g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round15(obj)
    return obj


def _matrix_pairs(matrix: np.ndarray) -> list:
    """Row-major [re, im] pairs for a complex matrix."""
    return [[_round15(z.real), _round15(z.imag)] for z in np.asarray(matrix).ravel()]


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump_json(payload: dict, out_path: str | None) -> None:
    _emit(json.dumps(_jsonable(payload), indent=2), out_path)


def _parse_dims(spec: str) -> list[int]:
    try:
        lo_text, hi_text = spec.split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise ValidationError(
            f"--dims expects an inclusive range like 2:6, got {spec!r}"
        ) from exc
    if lo < 2 or hi < lo:
        raise InvalidDimension(f"--dims range {spec!r} must satisfy 2 <= a <= b")
    return list(range(lo, hi + 1))


def _resolve_state(args):
    spec = args.state
    if spec == "ghz":
        if args.dim is None:
            raise ValidationError("--dim is required with --state ghz")
        return ghz_state(args.dim)
    if spec.startswith("random:"):
        if args.dim is None:
            raise ValidationError("--dim is required with --state random:<seed>")
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ValidationError(f"bad random state seed in {spec!r}") from exc
        return random_two_qudit_state(args.dim, seed)
    if spec.startswith("file:"):
        return load_state_file(spec.split(":", 1)[1], d=args.dim)
    raise ValidationError(
        f'--state must be "ghz", "random:<seed>" or "file:<path>", got {spec!r}'
    )


def _thread_count() -> int:
    raw = os.environ.get("QCHSH_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"QCHSH_THREADS must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValidationError(f"QCHSH_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def cmd_basis(args) -> int:
    if args.dim is None:
        raise ValidationError("--dim is required for the basis command")
    basis = build_gellmann_basis(args.dim)
    payload = {
        "d": basis.dim,
        "operators": [_matrix_pairs(op) for op in basis.operators],
    }
    _dump_json(payload, args.out)
    return 0


def cmd_correlation(args) -> int:
    state = _resolve_state(args)
    basis = build_gellmann_basis(state.dim)
    t = correlation_matrix(state, basis)
    if args.output == "csv":
        lines = ["," + ",".join(basis.labels)]
        for label, row in zip(basis.labels, t.matrix):
            lines.append(label + "," + ",".join(f"{v:.15g}" for v in row))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _dump_json({"d": state.dim, "T": t.matrix}, args.out)
    return 0


def cmd_bounds(args) -> int:
    state = _resolve_state(args)
    basis = build_gellmann_basis(state.dim)
    report = chsh_bounds(correlation_matrix(state, basis))
    payload = {
        "d": report.dim,
        "lambda1": report.lambda1,
        "lambda2": report.lambda2,
        "lower": report.lower,
        "upper": report.upper,
        "tsirelson": report.tsirelson,
        "upper_improves_tsirelson": report.upper_improves_tsirelson,
    }
    _dump_json(payload, args.out)
    return 0


def cmd_optimize(args) -> int:
    state = _resolve_state(args)
    basis = build_gellmann_basis(state.dim)
    config = SeesawConfig(
        mode=args.mode, restarts=args.restarts, tolerance=args.tol, seed=args.seed
    )
    result = seesaw_maximize(state, basis, config, threads=_thread_count())
    report = chsh_bounds(correlation_matrix(state, basis))
    payload = {
        "d": state.dim,
        "value": result.value,
        "mode": result.mode,
        "restarts": config.restarts,
        "converged_count": result.converged_count,
        "a1": result.a1,
        "a2": result.a2,
        "b1": result.b1,
        "b2": result.b2,
        "settings": {
            "A1": _matrix_pairs(result.settings.a1.matrix),
            "A2": _matrix_pairs(result.settings.a2.matrix),
            "B1": _matrix_pairs(result.settings.b1.matrix),
            "B2": _matrix_pairs(result.settings.b2.matrix),
        },
        "upper_bound": report.upper,
        "lower_bound": report.lower,
        "tsirelson_gap": TSIRELSON - report.upper,
    }
    _dump_json(payload, args.out)
    return 0


def cmd_ghz_table(args) -> int:
    dims = _parse_dims(args.dims)
    config = SeesawConfig(
        mode=args.mode, restarts=args.restarts, tolerance=args.tol, seed=args.seed
    )
    threads = _thread_count()
    rows = []
    for d in dims:
        basis = build_gellmann_basis(d)
        state = ghz_state(d)
        closed = ghz_chsh_maximum(d)
        certificate = abs(chsh_expectation_direct(state, ghz_optimal_settings(d, basis)))
        seesaw = seesaw_maximize(state, basis, config, threads=threads).value
        report = chsh_bounds(ghz_correlation_matrix(d))
        rows.append(
            {
                "d": d,
                "closed_form": closed,
                "certificate": certificate,
                "seesaw": seesaw,
                "upper_bound": report.upper,
                "tsirelson_gap": TSIRELSON - report.upper,
                "upper_improves_tsirelson": report.upper_improves_tsirelson,
            }
        )
    if args.output == "csv":
        header = [
            "d", "closed_form", "certificate", "seesaw",
            "upper_bound", "tsirelson_gap", "upper_improves_tsirelson",
        ]
        lines = [",".join(header)]
        for row in rows:
            lines.append(
                ",".join(
                    str(row["d"]) if key == "d"
                    else (str(row[key]).lower() if key == "upper_improves_tsirelson"
                          else f"{row[key]:.15g}")
                    for key in header
                )
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _dump_json({"rows": rows}, args.out)
    return 0


def cmd_verify(args) -> int:
    dims = _parse_dims(args.dims)
    names = [args.suite] if args.suite else None
    results = verify_module.run_suites(
        names=names, dims=dims, trials=args.trials, seed=args.seed
    )
    failed = [r for r in results if not r.passed]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{result.name}: {status} ({result.checks} checks) {result.detail}")
    print(f"suites passed: {len(results) - len(failed)}/{len(results)}")
    if failed:
        print(f"first failing suite: {failed[0].name}", file=sys.stderr)
        return 2
    return 0


class _Parser(argparse.ArgumentParser):
    # Usage errors are invalid input, not numerical failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qchsh",
        description="CHSH expectation bounds and maximization for two-qudit states",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, state=True):
        if state:
            p.add_argument("--state", default="ghz",
                           help='state source: "ghz", "random:<seed>" or "file:<path>"')
            p.add_argument("--dim", type=int, default=None, help="qudit dimension d")
        p.add_argument("--out", default=None, help="write the report to this path")

    p_basis = sub.add_parser("basis", help="export the operator basis as JSON")
    p_basis.add_argument("--dim", type=int, default=None, help="qudit dimension d")
    p_basis.add_argument("--out", default=None)
    p_basis.set_defaults(func=cmd_basis)

    p_corr = sub.add_parser("correlation", help="correlation matrix of a state")
    add_common(p_corr)
    p_corr.add_argument("--output", choices=("json", "csv"), default="json")
    p_corr.set_defaults(func=cmd_correlation)

    p_bounds = sub.add_parser("bounds", help="spectral lower/upper CHSH bounds")
    add_common(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_opt = sub.add_parser("optimize", help="see-saw maximization of |CHSH|")
    add_common(p_opt)
    p_opt.add_argument("--mode", choices=("exact", "closed-form"), default="exact")
    p_opt.add_argument("--restarts", type=int, default=32)
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument("--tol", type=float, default=1e-10)
    p_opt.set_defaults(func=cmd_optimize)

    p_table = sub.add_parser("ghz-table", help="GHZ closed forms vs optimization per d")
    p_table.add_argument("--dims", default="2:8", help="inclusive range a:b")
    p_table.add_argument("--mode", choices=("exact", "closed-form"), default="exact")
    p_table.add_argument("--restarts", type=int, default=32)
    p_table.add_argument("--seed", type=int, default=0)
    p_table.add_argument("--tol", type=float, default=1e-10)
    p_table.add_argument("--output", choices=("json", "csv"), default="json")
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=cmd_ghz_table)

    p_verify = sub.add_parser("verify", help="run the invariant suites")
    p_verify.add_argument("--suite", default=None,
                          help=f"one of: {', '.join(verify_module.SUITES)}")
    p_verify.add_argument("--trials", type=int, default=verify_module.DEFAULT_TRIALS)
    p_verify.add_argument("--dims", default="2:6")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
