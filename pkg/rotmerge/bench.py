"""
Rotmerge Bench Module
Runs the merging passes over a manifest of circuit files and tabulates T-counts.
"""

import csv
import io
import logging
import os
import shlex
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import psutil

from .errors import BudgetExceededError, CircuitParseError, RotmergeError, UsageError
from .formats import load_circuit
from .gf2 import RankVector
from .merge import METHODS, RANKED_METHODS, RotationMerger
from .rotations import extract, rank_vector
from .verify import EquivalenceChecker

logger = logging.getLogger(__name__)

CSV_HEADER = ["circuit", "n", "t_in", "method", "t_out", "rz_out", "checks", "h", "ms", "verified"]


@dataclass
class ManifestEntry:
    """One manifest line: a circuit path plus optional display name and reported numbers."""

    path: Path
    name: str
    extra: Dict[str, str] = field(default_factory=dict)


def parse_manifest(text: str, base_dir: Union[str, Path] = ".") -> List[ManifestEntry]:
    """
    One circuit per line, relative paths resolved against `base_dir`.

    `#` starts a comment. Tokens of the form key=value after the path are
    kept: `name=` overrides the display name, anything else is shown as an
    externally reported column in the markdown report.
    """
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        path_token = None
        extra: Dict[str, str] = {}
        for token in shlex.split(line):
            if "=" in token and path_token is not None:
                key, _, value = token.partition("=")
                extra[key] = value
            elif path_token is None:
                path_token = token
            else:
                raise CircuitParseError(f"unexpected manifest token {token!r}", line_no)
        path = Path(path_token)
        if not path.is_absolute():
            path = Path(base_dir) / path
        name = extra.pop("name", None) or path.stem
        entries.append(ManifestEntry(path, name, extra))
    return entries


def load_manifest(path: Union[str, Path]) -> List[ManifestEntry]:
    """Read a manifest file; relative paths are taken from its directory."""
    manifest = Path(path)
    return parse_manifest(manifest.read_text(encoding="utf-8"), manifest.parent)


@dataclass
class MethodResult:
    """One pass on one circuit. `error` is "budget", "memory" or a message."""

    t_out: Optional[int] = None
    rz_out: Optional[int] = None
    checks: Optional[int] = None
    ms: Optional[float] = None
    verified: Optional[bool] = None
    error: Optional[str] = None


@dataclass
class BenchRow:
    """Per-circuit results, one MethodResult per requested pass."""

    circuit: str
    n: Optional[int] = None
    t_in: Optional[int] = None
    h: Optional[int] = None
    parse_ms: float = 0.0
    rss_mb: float = 0.0
    results: Dict[str, MethodResult] = field(default_factory=dict)
    extra: Dict[str, str] = field(default_factory=dict)
    error: Optional[str] = None


def _verified_cell(result: MethodResult, row_error: Optional[str]) -> str:
    if row_error or result.error:
        return result.error if result.error in ("budget", "memory") else "error"
    if result.verified is None:
        return ""
    return "true" if result.verified else "false"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


@dataclass
class BenchReport:
    """Rows of a bench run in manifest order."""

    methods: List[str]
    rows: List[BenchRow] = field(default_factory=list)

    def to_csv(self) -> str:
        """One line per circuit and method."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            for method in self.methods:
                result = row.results.get(method, MethodResult())
                writer.writerow(
                    [
                        row.circuit,
                        _cell(row.n),
                        _cell(row.t_in),
                        method,
                        _cell(result.t_out),
                        _cell(result.rz_out),
                        _cell(result.checks),
                        _cell(row.h),
                        _cell(result.ms),
                        _verified_cell(result, row.error),
                    ]
                )
        return buffer.getvalue()

    def to_markdown(self) -> str:
        """Comparison table, one row per circuit."""
        extra_keys = sorted({key for row in self.rows for key in row.extra})
        header = ["Circuit", "n", "T-count", "h"]
        for method in self.methods:
            header += [f"{method} T-count", f"{method} t (s)"]
        header += extra_keys
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        for row in self.rows:
            cells = [row.circuit, _cell(row.n), _cell(row.t_in), _cell(row.h)]
            for method in self.methods:
                result = row.results.get(method, MethodResult())
                if row.error or result.error:
                    cells += [result.error or "error", ""]
                else:
                    seconds = result.ms / 1000.0 if result.ms is not None else None
                    cells += [_cell(result.t_out), _cell(seconds)]
            cells += [row.extra.get(key, "") for key in extra_keys]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"


def _budget_deadline(config: Dict[str, Any]) -> Optional[float]:
    budget = config.get("time_budget_s")
    return time.perf_counter() + budget if budget else None


def run_entry(entry: ManifestEntry, config: Dict[str, Any]) -> BenchRow:
    """
    Benchmark one circuit. Failures are recorded in the row rather than raised.

    The rank vector is computed once, under the time budget, and shared by
    bbmerge and fasttmerge; its time is added to theirs and taken off their
    remaining budget.
    """
    row = BenchRow(circuit=entry.name, extra=dict(entry.extra))
    started = time.perf_counter()
    try:
        circuit = load_circuit(entry.path)
    except (OSError, RotmergeError, MemoryError) as e:
        logger.error(f"{entry.name}: {e}")
        row.error = str(e) or type(e).__name__
        return row
    row.parse_ms = (time.perf_counter() - started) * 1000.0
    row.n = circuit.n_qubits
    row.t_in = circuit.stats().t_count

    vector: Optional[RankVector] = None
    rank_error: Optional[str] = None
    rank_started = time.perf_counter()
    try:
        vector = rank_vector(
            extract(circuit), config["rank_backend"], deadline=_budget_deadline(config)
        )
        row.h = vector.h
    except BudgetExceededError as e:
        logger.warning(f"{entry.name}: {e}")
        rank_error = "budget"
    except RotmergeError as e:
        logger.error(f"{entry.name}: {e}")
        rank_error = str(e)
    except MemoryError:
        logger.error(f"{entry.name}: out of memory computing the rank vector")
        rank_error = "memory"
    rank_s = time.perf_counter() - rank_started

    budget = config.get("time_budget_s")
    checker = EquivalenceChecker({"seed": config["seed"]})
    for method in config["methods"]:
        result = MethodResult()
        row.results[method] = result
        ranked = method in RANKED_METHODS
        if ranked and rank_error:
            result.error = rank_error
            continue
        method_budget = budget
        if ranked and budget:
            method_budget = budget - rank_s
            if method_budget <= 0:
                result.error = "budget"
                continue
        merger = RotationMerger(
            {"time_budget_s": method_budget, "rank_backend": config["rank_backend"]}
        )
        try:
            outcome = merger.run(method, circuit, vector)
        except BudgetExceededError as e:
            logger.warning(f"{entry.name} / {method}: {e}")
            result.error = "budget"
            continue
        except RotmergeError as e:
            logger.error(f"{entry.name} / {method}: {e}")
            result.error = str(e)
            continue
        except MemoryError:
            logger.error(f"{entry.name} / {method}: out of memory")
            result.error = "memory"
            continue
        result.t_out = outcome.t_count_after
        result.rz_out = outcome.rz_count_after
        result.checks = outcome.checks
        result.ms = outcome.wall_time_ms + (rank_s * 1000.0 if ranked else 0.0)
        if circuit.n_qubits <= config["verify_max_qubits"]:
            try:
                result.verified = checker.check(circuit, outcome.circuit).equivalent
            except (RotmergeError, MemoryError) as e:
                logger.warning(f"{entry.name} / {method}: verification skipped: {e!r}")

    row.rss_mb = psutil.Process(os.getpid()).memory_info().rss / (1024 * 1024)
    summary = ", ".join(
        f"{m}={r.t_out if r.error is None else r.error}" for m, r in row.results.items()
    )
    logger.info(
        f"{entry.name}: n={row.n} T={row.t_in} h={row.h} -> {summary} "
        f"(parse {row.parse_ms:.1f} ms, rss {row.rss_mb:.1f} MB)"
    )
    return row


class BenchRunner:
    """Runs every requested pass on every manifest entry, optionally in parallel across circuits."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = {**self._default_config(), **(config or {})}
        unknown = [m for m in self.config["methods"] if m not in METHODS]
        if unknown:
            raise UsageError(f"unknown methods: {', '.join(unknown)}")

    def _default_config(self) -> Dict[str, Any]:
        """Default bench configuration."""
        return {
            "methods": list(METHODS),
            "verify_max_qubits": 0,
            "jobs": 1,
            "time_budget_s": None,
            "seed": 2024,
            "rank_backend": "elimination",
        }

    def run(self, entries: Sequence[ManifestEntry]) -> BenchReport:
        """Benchmark every entry, in parallel across circuits when jobs > 1."""
        report = BenchReport(methods=list(self.config["methods"]))
        if not entries:
            logger.info("Empty manifest, nothing to run")
            return report
        jobs = max(1, int(self.config["jobs"]))
        logger.info(f"Benchmarking {len(entries)} circuits with {jobs} job(s)")
        if jobs == 1:
            report.rows = [run_entry(entry, self.config) for entry in entries]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                report.rows = list(
                    pool.map(run_entry, entries, [self.config] * len(entries))
                )
        return report
