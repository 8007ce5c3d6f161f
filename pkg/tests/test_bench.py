"""
Unit tests for the Rotmerge benchmark harness.
"""

from pathlib import Path
from unittest.mock import patch

import pytest

from rotmerge.bench import (
    CSV_HEADER,
    BenchRunner,
    ManifestEntry,
    load_manifest,
    parse_manifest,
    run_entry,
)
from rotmerge.errors import BudgetExceededError, CircuitParseError, UsageError
from rotmerge.merge import RotationMerger
from rotmerge.rotations import rank_vector

CIRCUITS = Path(__file__).parent / "circuits"


class TestManifest:
    """Test cases for manifest parsing."""

    def test_paths_names_and_comments(self):
        """Test relative paths, display names and reported numbers."""
        text = "# corpus\n\none_wire.qc name=OneWire reported=3  # inline\n/abs/three_wire.qc\n"
        entries = parse_manifest(text, "/data")
        assert len(entries) == 2
        assert entries[0].path == Path("/data/one_wire.qc")
        assert entries[0].name == "OneWire"
        assert entries[0].extra == {"reported": "3"}
        assert entries[1].path == Path("/abs/three_wire.qc")
        assert entries[1].name == "three_wire"

    def test_unexpected_token(self):
        """Test a second path on one line."""
        with pytest.raises(CircuitParseError, match="line 2"):
            parse_manifest("one_wire.qc\none_wire.qc three_wire.qc\n")

    def test_load_manifest_resolves_against_its_directory(self, tmp_path):
        """Test that paths are relative to the manifest file."""
        manifest = tmp_path / "suite.txt"
        manifest.write_text("one_wire.qc\n")
        assert load_manifest(manifest)[0].path == tmp_path / "one_wire.qc"


class TestBenchRunner:
    """Test cases for BenchRunner and its reports."""

    def setup_method(self):
        """Set up test fixtures."""
        self.one_wire = ManifestEntry(CIRCUITS / "one_wire.qc", "one_wire", {"reported": "0"})
        self.runner = BenchRunner({"verify_max_qubits": 3})

    def test_one_wire_row(self):
        """Test the T-counts of each pass on the one-qubit example."""
        report = self.runner.run([self.one_wire])
        row = report.rows[0]
        assert (row.n, row.t_in, row.h) == (1, 4, 2)
        assert row.results["tmerge"].t_out == 0
        assert row.results["bbmerge"].t_out == 2
        assert row.results["fasttmerge"].t_out == 0
        assert all(result.verified for result in row.results.values())
        assert row.rss_mb > 0

    def test_csv(self):
        """Test one CSV line per circuit and method."""
        lines = self.runner.run([self.one_wire]).to_csv().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 4
        cells = lines[2].split(",")
        assert cells[:5] == ["one_wire", "1", "4", "bbmerge", "2"]
        assert cells[-1] == "true"

    def test_markdown(self):
        """Test the comparison table layout."""
        text = BenchRunner({"methods": ["bbmerge"]}).run([self.one_wire]).to_markdown()
        lines = text.splitlines()
        assert lines[0] == "| Circuit | n | T-count | h | bbmerge T-count | bbmerge t (s) | reported |"
        assert lines[2].startswith("| one_wire | 1 | 4 | 2 | 2 | ")
        assert lines[2].endswith("| 0 |")

    def test_missing_circuit_is_recorded(self):
        """Test that a load failure does not stop the run."""
        missing = ManifestEntry(CIRCUITS / "absent.qc", "absent")
        report = self.runner.run([missing, self.one_wire])
        assert report.rows[0].error is not None
        assert report.rows[1].error is None
        assert report.to_csv().splitlines()[1].endswith(",error")

    def test_budget_is_recorded(self):
        """Test that an exhausted budget marks the cell."""
        config = {**self.runner.config, "methods": ["fasttmerge"]}
        with patch.object(RotationMerger, "run", side_effect=BudgetExceededError("time budget")):
            row = run_entry(self.one_wire, config)
        assert row.results["fasttmerge"].error == "budget"
        assert row.results["fasttmerge"].t_out is None

    def test_rank_vector_computed_once(self):
        """Test that both ranked passes share the row's rank vector."""
        with patch("rotmerge.bench.rank_vector", wraps=rank_vector) as shared, patch(
            "rotmerge.merge.rank_vector"
        ) as per_pass:
            row = run_entry(self.one_wire, self.runner.config)
        assert shared.call_count == 1
        per_pass.assert_not_called()
        assert row.h == 2
        assert row.results["fasttmerge"].t_out == 0

    def test_rank_vector_budget(self):
        """Test that an exhausted budget in the rank vector only marks the ranked passes."""
        with patch("rotmerge.bench.rank_vector", side_effect=BudgetExceededError("time budget")):
            row = run_entry(self.one_wire, self.runner.config)
        assert row.h is None
        assert row.results["bbmerge"].error == "budget"
        assert row.results["fasttmerge"].error == "budget"
        assert row.results["tmerge"].t_out == 0

    def test_out_of_memory_is_recorded(self):
        """Test that a MemoryError in a pass marks the cell instead of ending the run."""
        config = {**self.runner.config, "methods": ["tmerge", "bbmerge"]}
        with patch.object(RotationMerger, "run", side_effect=MemoryError()):
            report = BenchRunner(config).run([self.one_wire, self.one_wire])
        assert len(report.rows) == 2
        assert report.rows[1].results["bbmerge"].error == "memory"
        assert report.to_csv().splitlines()[1].endswith(",memory")

    def test_rank_vector_out_of_memory(self):
        """Test a MemoryError while computing the rank vector."""
        with patch("rotmerge.bench.rank_vector", side_effect=MemoryError()):
            row = run_entry(self.one_wire, self.runner.config)
        assert row.results["fasttmerge"].error == "memory"
        assert row.results["tmerge"].error is None

    def test_unknown_method(self):
        """Test method validation."""
        with pytest.raises(UsageError, match="zxmerge"):
            BenchRunner({"methods": ["tmerge", "zxmerge"]})

    def test_empty_manifest(self):
        """Test a run without circuits."""
        report = self.runner.run([])
        assert report.rows == []
        assert report.to_csv() == ",".join(CSV_HEADER) + "\n"


if __name__ == '__main__':
    pytest.main([__file__])
