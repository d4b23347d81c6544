"""Command-line front end: closed-form values, tables and verification suites.

Exit codes: 0 when everything passed, 1 when a verification check failed,
2 on usage errors (including copy counts with M < N).  Data goes to stdout,
diagnostics to stderr.  The literal token ``inf`` selects an unbounded
output count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import verify
from .cloner import (
    UNBOUNDED,
    CopyCount,
    cascade,
    optimal_cloner,
    optimal_fidelity,
    optimal_noise_variance,
    squeezed_variant,
)
from .errors import SGCloneError
from .fock_oracle import DEFAULT_NODES

DEFAULT_SAMPLES = 10**6
DEFAULT_SEED = 42
DEFAULT_TOLERANCE = 1e-5
FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; built by :func:`main` from argv."""

    command: str
    n: int | None = None
    m: CopyCount | None = None
    l: int | None = None
    r: float = 0.0
    cutoff: int | None = None
    nodes: int = DEFAULT_NODES
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    tolerance: float = DEFAULT_TOLERANCE
    format: str = "text"


def _count_token(text: str):
    if text == "inf":
        return UNBOUNDED
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}")


def _count_str(m) -> str:
    return "inf" if m is UNBOUNDED else str(m)


def _dec(value, digits: int = 12) -> str:
    return format(float(value), f".{digits}g")


def _with_exact(value) -> str:
    text = _dec(value, 6)
    if isinstance(value, Fraction) and value.denominator != 1:
        text += f" (= {value})"
    return text


def _csv_lines(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def emit_table(n_max: int, m_max: int, fmt: str = "csv") -> str:
    """Variance/fidelity grid over all pairs N <= M, one row per pair."""
    from .errors import DomainError

    if not 1 <= n_max <= m_max:
        raise DomainError(f"need 1 <= n_max <= m_max, got {n_max}, {m_max}")
    rows = []
    for n in range(1, n_max + 1):
        for m in range(n, m_max + 1):
            rows.append(
                (n, m, float(optimal_noise_variance(n, m).var_x), float(optimal_fidelity(n, m)))
            )
    if fmt == "json":
        return json.dumps(
            {"rows": [{"n": n, "m": m, "variance": v, "fidelity": f} for n, m, v, f in rows]},
            indent=2,
        )
    if fmt == "csv":
        return _csv_lines(
            ["n", "m", "variance", "fidelity"],
            [[n, m, _dec(v), _dec(f)] for n, m, v, f in rows],
        )
    lines = [f"{'n':>4} {'m':>4} {'variance':>16} {'fidelity':>16}"]
    lines += [f"{n:>4} {m:>4} {_dec(v):>16} {_dec(f):>16}" for n, m, v, f in rows]
    return "\n".join(lines)


def _emit_value(config: RunConfig, fields: dict, text: str) -> None:
    if config.format == "json":
        print(json.dumps(fields, indent=2))
    elif config.format == "csv":
        print(_csv_lines(list(fields), [[fields[k] for k in fields]]), end="")
    else:
        print(text)


def _run_fidelity(config: RunConfig) -> int:
    value = optimal_fidelity(config.n, config.m).value
    _emit_value(
        config,
        {"n": config.n, "m": _count_str(config.m), "fidelity": float(value)},
        _with_exact(value),
    )
    return 0


def _run_variance(config: RunConfig) -> int:
    if config.r != 0:
        noise = squeezed_variant(config.n, config.m, config.r).noise
        _emit_value(
            config,
            {
                "n": config.n,
                "m": _count_str(config.m),
                "r": config.r,
                "var_x": float(noise.var_x),
                "var_p": float(noise.var_p),
            },
            f"var_x {_dec(noise.var_x, 6)}, var_p {_dec(noise.var_p, 6)}",
        )
        return 0
    value = optimal_noise_variance(config.n, config.m).var_x
    _emit_value(
        config,
        {"n": config.n, "m": _count_str(config.m), "variance": float(value)},
        _with_exact(value),
    )
    return 0


def _run_cascade(config: RunConfig) -> int:
    composed = cascade(optimal_cloner(config.n, config.m), optimal_cloner(config.m, config.l))
    optimal = optimal_noise_variance(config.n, config.l)
    match = composed.noise == optimal
    _emit_value(
        config,
        {
            "n": config.n,
            "m": _count_str(config.m),
            "l": config.l,
            "composed": float(composed.noise.var_x),
            "optimal": float(optimal.var_x),
            "match": match,
        },
        f"composed {_with_exact(composed.noise.var_x)}, "
        f"optimal {_with_exact(optimal.var_x)}, match={'true' if match else 'false'}",
    )
    return 0


def _print_report(report: verify.VerificationReport, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif fmt == "csv":
        rows = [
            [c.name, _dec(c.expected), _dec(c.observed), _dec(c.tolerance),
             "true" if c.passed else "false"]
            for c in report.checks
        ]
        print(_csv_lines(["name", "expected", "observed", "tolerance", "pass"], rows), end="")
    else:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(
                f"{status}  {c.name}: expected={_dec(c.expected)}, "
                f"observed={_dec(c.observed)}, tol={_dec(c.tolerance)}"
            )
        passed = sum(c.passed for c in report.checks)
        print(f"overall: {'PASS' if report.overall else 'FAIL'} ({passed}/{len(report.checks)})")
    return 0 if report.overall else 1


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    if config.command == "fidelity":
        return _run_fidelity(config)
    if config.command == "variance":
        return _run_variance(config)
    if config.command == "cascade":
        return _run_cascade(config)
    if config.command == "table":
        rendered = emit_table(config.n, config.m, config.format)
        sys.stdout.write(rendered if rendered.endswith("\n") else rendered + "\n")
        return 0
    if config.command == "verify-bounds":
        return _print_report(verify.verify_bounds(), config.format)
    if config.command == "verify-fock":
        report = verify.verify_fock(
            tolerance=config.tolerance, nodes=config.nodes, cutoff=config.cutoff
        )
        return _print_report(report, config.format)
    if config.command == "verify-mc":
        report = verify.verify_mc(samples=config.samples, seed=config.seed)
        return _print_report(report, config.format)
    raise SGCloneError(f"unknown command {config.command!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgclone",
        description="Optimal symmetric Gaussian cloning of coherent states: "
        "closed forms, tables and verification suites.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fidelity", parents=[common], help="optimal N->M cloning fidelity")
    p.add_argument("n", type=int)
    p.add_argument("m", type=_count_token)

    p = sub.add_parser("variance", parents=[common], help="optimal N->M cloning noise variance")
    p.add_argument("n", type=int)
    p.add_argument("m", type=_count_token)
    p.add_argument("--r", type=float, default=0.0,
                   help="squeezing parameter; nonzero prints the anisotropic pair")

    p = sub.add_parser("cascade", parents=[common],
                       help="compose optimal N->M and M->L cloners, compare to optimal N->L")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("l", type=int)

    p = sub.add_parser("table", parents=[common], help="variance/fidelity grid over N <= M")
    p.add_argument("n_max", type=int)
    p.add_argument("m_max", type=int)

    sub.add_parser("verify-bounds", parents=[common],
                   help="exact identities of the closed-form and bound layers")

    p = sub.add_parser("verify-fock", parents=[common],
                       help="truncated-Fock oracle against the closed forms")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--nodes", type=int, default=DEFAULT_NODES)
    p.add_argument("--cutoff", type=int, default=None)

    p = sub.add_parser("verify-mc", parents=[common], help="seeded Monte Carlo measurement checks")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        n=getattr(args, "n", getattr(args, "n_max", None)),
        m=getattr(args, "m", getattr(args, "m_max", None)),
        l=getattr(args, "l", None),
        r=getattr(args, "r", 0.0),
        cutoff=getattr(args, "cutoff", None),
        nodes=getattr(args, "nodes", DEFAULT_NODES),
        samples=getattr(args, "samples", DEFAULT_SAMPLES),
        seed=getattr(args, "seed", DEFAULT_SEED),
        tolerance=getattr(args, "tolerance", DEFAULT_TOLERANCE),
        format=args.format,
    )
    try:
        return run(config)
    except SGCloneError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
