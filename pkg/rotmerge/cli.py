#!/usr/bin/env python3
"""
Rotmerge CLI
Optimize Clifford+RZ circuits by rotation merging, report statistics and rank
certificates, check equivalence and run benchmark manifests.
"""

import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, NoReturn, Optional

import click
from colorama import Fore, Style
from colorama import init as colorama_init
from dotenv import load_dotenv

from .bench import BenchRunner, load_manifest
from .circuit import Circuit
from .errors import InvariantError, RotmergeError
from .formats import EXTENSIONS, detect_format, load_circuit, save_circuit
from .merge import METHODS, RotationMerger
from .rotations import commutativity_matrix, extended_commutativity_matrix, extract, rank_vector
from .verify import EquivalenceChecker

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _status(message: str, color: str = Fore.GREEN) -> None:
    click.echo(f"{color}{message}{Style.RESET_ALL}", err=True)


def _fail(error: Exception) -> NoReturn:
    code = EXIT_INTERNAL_ERROR if isinstance(error, InvariantError) else EXIT_INPUT_ERROR
    logger.error(str(error))
    _status(f"✗ {error}", Fore.RED)
    sys.exit(code)


def _load(path: str, fmt: str = "auto") -> Circuit:
    try:
        return load_circuit(path, fmt)
    except (OSError, RotmergeError) as e:
        _fail(e)


def _echo_json(data: Dict[str, Any]) -> None:
    click.echo(json.dumps(data, indent=2))


def _default_seed() -> int:
    return int(os.getenv("ROTMERGE_SEED", "2024"))


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
def main(verbose: bool) -> None:
    """Rotation-merging optimizer for Clifford+RZ circuits."""
    load_dotenv()
    colorama_init()
    level = "DEBUG" if verbose else os.getenv("ROTMERGE_LOG_LEVEL", "INFO").upper()
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


@main.command()
@click.option(
    "--method",
    type=click.Choice(list(METHODS)),
    default="fasttmerge",
    show_default=True,
    help="Merging pass to run",
)
@click.option("--in", "input_path", required=True, help="Input circuit (.qc or .qasm)")
@click.option("--out", "output_path", default=None, help="Where to write the optimized circuit")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["qc", "qasm", "auto"]),
    default="auto",
    show_default=True,
    help="Input format (auto: by extension)",
)
@click.option("--stats-json", default=None, help="Write the pass summary as JSON to this file")
@click.option("--time-budget", type=float, default=None, help="Abort the pass after this many seconds")
@click.option("--check-invariants", is_flag=True, help="Validate the tableau after every gate")
def optimize(
    method: str,
    input_path: str,
    output_path: Optional[str],
    fmt: str,
    stats_json: Optional[str],
    time_budget: Optional[float],
    check_invariants: bool,
) -> None:
    """Merge rotations in a circuit."""
    circuit = _load(input_path, fmt)
    merger = RotationMerger({"time_budget_s": time_budget, "check_invariants": check_invariants})
    try:
        outcome = merger.run(method, circuit)
        if output_path:
            if Path(output_path).suffix.lower() in EXTENSIONS:
                out_fmt = detect_format(output_path)
            else:
                out_fmt = detect_format(input_path, fmt)
            save_circuit(outcome.circuit, output_path, out_fmt)
        if stats_json:
            Path(stats_json).write_text(json.dumps(outcome.to_dict(), indent=2), encoding="utf-8")
    except (OSError, RotmergeError) as e:
        _fail(e)

    _status(
        f"✓ {method}: T-count {outcome.t_count_before} -> {outcome.t_count_after} "
        f"({outcome.checks} checks, {outcome.wall_time_ms:.1f} ms)"
    )
    if not output_path:
        click.echo(f"t_count {outcome.t_count_after}")


@main.command()
@click.option("--in", "input_path", required=True, help="Input circuit (.qc or .qasm)")
@click.option("--format", "fmt", type=click.Choice(["qc", "qasm", "auto"]), default="auto")
def stats(input_path: str, fmt: str) -> None:
    """Print gate counts as JSON."""
    circuit = _load(input_path, fmt)
    _echo_json(circuit.stats().to_dict())


@main.command()
@click.option("--in", "input_path", required=True, help="Input circuit (.qc or .qasm)")
@click.option("--format", "fmt", type=click.Choice(["qc", "qasm", "auto"]), default="auto")
@click.option("--extended", is_flag=True, help="Also report the rank of the extended matrix")
@click.option("--vector", is_flag=True, help="Include the rank vector itself")
@click.option("--pbm", "pbm_path", default=None, help="Dump the commutativity matrix as a PBM bitmap")
def rank(input_path: str, fmt: str, extended: bool, vector: bool, pbm_path: Optional[str]) -> None:
    """Print the commutativity-matrix ranks of a circuit."""
    circuit = _load(input_path, fmt)
    try:
        seq = extract(circuit)
        matrix = commutativity_matrix(seq)
        v = rank_vector(seq)
        result: Dict[str, Any] = {"m": seq.m, "h": v.h, "rank_A": matrix.rank()}
        if extended:
            result["rank_M"] = extended_commutativity_matrix(circuit).rank()
        if vector:
            result["v"] = list(v.bits)
            result["pivots"] = list(v.pivot_indices)
        if pbm_path:
            Path(pbm_path).write_text(matrix.to_pbm(), encoding="ascii")
    except (OSError, RotmergeError) as e:
        _fail(e)
    _echo_json(result)


@main.command()
@click.option("--a", "path_a", required=True, help="First circuit")
@click.option("--b", "path_b", required=True, help="Second circuit")
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--samples", type=int, default=5, show_default=True, help="Parameter assignments")
@click.option("--seed", type=int, default=None, help="RNG seed (default: ROTMERGE_SEED or 2024)")
def verify(path_a: str, path_b: str, tol: float, samples: int, seed: Optional[int]) -> None:
    """Check that two circuits are equal up to global phase."""
    a, b = _load(path_a), _load(path_b)
    seed = _default_seed() if seed is None else seed
    checker = EquivalenceChecker({"tol": tol, "n_param_samples": samples, "seed": seed})
    try:
        report = checker.check(a, b)
    except RotmergeError as e:
        _fail(e)
    _echo_json(report.to_dict())
    if report.equivalent:
        _status(f"✓ equivalent (max deviation {report.max_deviation:.2e})")
        sys.exit(EXIT_OK)
    _status(f"✗ not equivalent (max deviation {report.max_deviation:.2e})", Fore.RED)
    sys.exit(EXIT_NOT_EQUIVALENT)


@main.command()
@click.option("--manifest", required=True, help="Manifest listing circuit files")
@click.option(
    "--methods",
    default=",".join(METHODS),
    show_default=True,
    help="Comma-separated passes to run",
)
@click.option("--verify-max-qubits", type=int, default=0, show_default=True)
@click.option("--out", "out_format", type=click.Choice(["csv", "md"]), default="csv")
@click.option("--report", "report_path", default=None, help="Write the report here instead of stdout")
@click.option("--jobs", type=int, default=1, show_default=True, help="Circuits processed in parallel")
@click.option("--time-budget", type=float, default=None, help="Per-pass budget in seconds")
@click.option("--seed", type=int, default=None, help="Verification seed")
def bench(
    manifest: str,
    methods: str,
    verify_max_qubits: int,
    out_format: str,
    report_path: Optional[str],
    jobs: int,
    time_budget: Optional[float],
    seed: Optional[int],
) -> None:
    """Run passes over every circuit of a manifest."""
    try:
        entries = load_manifest(manifest)
        runner = BenchRunner(
            {
                "methods": [m.strip() for m in methods.split(",") if m.strip()],
                "verify_max_qubits": verify_max_qubits,
                "jobs": jobs,
                "time_budget_s": time_budget,
                "seed": _default_seed() if seed is None else seed,
            }
        )
    except (OSError, RotmergeError) as e:
        _fail(e)

    report = runner.run(entries)
    text = report.to_csv() if out_format == "csv" else report.to_markdown()
    if report_path:
        Path(report_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)

    failed = [row.circuit for row in report.rows if row.error]
    if failed:
        _status(f"⚠ {len(failed)} circuit(s) failed: {', '.join(failed)}", Fore.YELLOW)
    _status(f"✓ benchmarked {len(report.rows)} circuit(s)")


if __name__ == "__main__":
    main()
