"""
title : main.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Callable, Sequence
from pathlib import Path
import argparse
import json
import logging
import sys

from qkagome.core import KagomeError, SectorTooLarge, StageError
from qkagome.utils import dumps, read_json, write_json
from qkagome.verify import (
    Cluster,
    run_ansatz,
    run_build,
    run_experiment,
    run_experiments,
    run_solve,
    spectrum_csv,
)

from .config import RunConfig

__all__ = ["main", "build_parser", "resolve_configs", "exit_code"]

logger = logging.getLogger("qkagome.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

# flag dest -> RunConfig field
_OVERRIDES = {
    "m": "M",
    "q": "q",
    "n": "N",
    "geometry": "geometry",
    "family": "family",
    "family_q": "family_q",
    "mode": "mode",
    "seed": "seed",
    "cap": "cap",
    "jobs": "jobs",
    "multistart": "multistart",
    "match_tol": "match_tol",
    "output": "output",
    "csv": "csv",
}


def _geometry_arg(text: str) -> Any:
    """A named class, or a JSON list of [k, l] pairs."""

    text = text.strip()
    if text.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as err:
            raise argparse.ArgumentTypeError(f"Invalid geometry {text}: {err}") from None
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        action="append",
        default=[],
        help="JSON config file; repeat to run several experiments",
    )
    common.add_argument("--m", type=int, default=None, help="Torus size M")
    common.add_argument("--q", type=float, default=None, help="Deformation parameter in (0,1)")
    common.add_argument("--n", type=int, default=None, help="Particle number N")
    common.add_argument(
        "--geometry",
        type=_geometry_arg,
        default=None,
        help="line, coincident, generic, grid:KxL or a JSON list of [k, l]",
    )
    common.add_argument("--family", default=None, help="Override the polynomial family")
    common.add_argument(
        "--family-q", type=float, default=None, help="Evaluate the family at another q"
    )
    common.add_argument("--mode", choices=["u", "x-free"], default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cap", type=int, default=None, help="Largest sector dimension")
    common.add_argument("--jobs", type=int, default=None, help="Concurrent workers")
    common.add_argument("--multistart", type=int, default=None)
    common.add_argument("--match-tol", type=float, default=None)
    common.add_argument("--output", default=None, help="JSON output path, stdout if absent")
    common.add_argument("--csv", default=None, help="CSV spectrum output path")
    common.add_argument("--timings", action="store_true", help="Include timings in reports")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="qkagome",
        description="Evolution operator of q-oscillators on a Kagome torus: "
        "exact construction, spectral equations and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="Build and export the block of sector (N, N)")
    sub.add_parser("solve", parents=[common], help="Solve the spectral equations")
    sub.add_parser("bethe", parents=[common], help="Evaluate the ansatz conditions")
    sub.add_parser("verify", parents=[common], help="Match predictions against the spectrum")

    report = sub.add_parser("report", help="Summarise a verification report")
    report.add_argument("report", help="MatchReport JSON file")
    report.add_argument("--csv", default=None, help="Write the spectrum as CSV")
    report.add_argument("--verbose", action="store_true")
    return parser


def resolve_configs(
    args: argparse.Namespace, env: dict[str, str] | None = None
) -> list[RunConfig]:
    """Defaults, then config files, then KB_SEED, then flags.

    Raises
    ------
    FileNotFoundError
        If a config file is missing
    ConfigError
        If a config file or a resulting config is invalid

    """

    bases = [RunConfig.from_json(path) for path in args.config] or [RunConfig()]
    overrides = {field: getattr(args, dest) for dest, field in _OVERRIDES.items()}
    if args.timings:
        overrides["timings"] = True

    configs = [base.with_env(env).with_overrides(**overrides) for base in bases]
    for config in configs:
        config.validate()
    return configs


def exit_code(err: BaseException) -> int:
    """Exit status of an error: usage 2, resource 3, anything else 4."""

    if isinstance(err, StageError):
        err = err.cause
    if isinstance(err, SectorTooLarge):
        return EXIT_RESOURCE
    if isinstance(err, (ValueError, OSError)):
        return EXIT_USAGE
    return EXIT_INTERNAL


def _emit(path: str | None, payload: Any) -> None:
    if path is None:
        sys.stdout.write(dumps(payload))
    else:
        write_json(path, payload)
        logger.info("Wrote %s.", path)


def _collect(configs: Sequence[RunConfig], payloads: list[Any]) -> Any:
    return payloads[0] if len(configs) == 1 else payloads


def _csv_paths(path: str, count: int) -> list[Path]:
    """One spectrum file per report; several reports get an index before the suffix."""
    path = Path(path)
    if count == 1:
        return [path]
    return [path.with_name(f"{path.stem}-{i}{path.suffix}") for i in range(count)]


def cmd_build(configs: Sequence[RunConfig]) -> int:
    jobs = max(c.jobs for c in configs)
    blocks = run_experiments(configs, jobs, run_build)
    _emit(configs[0].output, _collect(configs, [b.to_json() for b in blocks]))
    return EXIT_OK


def cmd_solve(configs: Sequence[RunConfig]) -> int:
    jobs = max(c.jobs for c in configs)
    results = run_experiments(configs, jobs, run_solve)
    payloads = [{"config": c.to_json(), **r.to_json()} for c, r in zip(configs, results)]
    _emit(configs[0].output, _collect(configs, payloads))
    return EXIT_OK


def cmd_bethe(configs: Sequence[RunConfig]) -> int:
    jobs = max(c.jobs for c in configs)
    results = run_experiments(configs, jobs, run_ansatz)
    payloads = [
        {"config": c.to_json(), "ansatz_conditions": r} for c, r in zip(configs, results)
    ]
    _emit(configs[0].output, _collect(configs, payloads))
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_FAILED


def cmd_verify(configs: Sequence[RunConfig]) -> int:
    jobs = max(c.jobs for c in configs)
    reports = run_experiments(configs, jobs, run_experiment)
    _emit(configs[0].output, _collect(configs, [r.to_json() for r in reports]))
    if configs[0].csv is not None:
        for path, report in zip(_csv_paths(configs[0].csv, len(reports)), reports):
            path.write_text(spectrum_csv(report.eigenvalues))
            logger.info("Wrote %s.", path)

    for config, report in zip(configs, reports):
        failed = [m for m in report.matches if not m.passed]
        if failed:
            logger.warning(
                "M=%d q=%g N=%d: %d of %d predictions unmatched.",
                config.M,
                config.q,
                config.N,
                len(failed),
                len(report.matches),
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_report(args: argparse.Namespace) -> int:
    payload = read_json(args.report)
    reports = payload if isinstance(payload, list) else [payload]
    if "eigenvalues" not in reports[0]:
        raise ValueError(f"{args.report} is not a verification report.")

    if args.csv is not None:
        for path, r in zip(_csv_paths(args.csv, len(reports)), reports):
            clusters = [Cluster(complex(*e["value"]), e["multiplicity"]) for e in r["eigenvalues"]]
            path.write_text(spectrum_csv(clusters))

    for r in reports:
        config = r["config"]
        matched = sum(m["passed"] for m in r["matches"])
        print(
            f"M={config['M']} q={config['q']} N={config['N']}: "
            f"{'PASS' if r['passed'] else 'FAIL'} {matched}/{len(r['matches'])} matched, "
            f"dim={r['dim']}, unmatched fraction={r['unmatched_fraction']}"
        )
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAILED


_COMMANDS: dict[str, Callable[[Sequence[RunConfig]], int]] = {
    "build": cmd_build,
    "solve": cmd_solve,
    "bethe": cmd_bethe,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        if args.command == "report":
            return cmd_report(args)
        configs = resolve_configs(args)
        return _COMMANDS[args.command](configs)
    except (KagomeError, ValueError, OSError) as err:
        code = exit_code(err)
        print(f"qkagome {args.command}: {err}", file=sys.stderr)
        if code == EXIT_INTERNAL:
            logger.exception("Internal failure.")
        return code


if __name__ == "__main__":
    sys.exit(main())
