import csv
import json
import subprocess
import sys

import pytest

from budgetmatroid.cli import main

BENCH_COLUMNS = [
    "instance",
    "n",
    "eps",
    "profit",
    "opt",
    "ratio",
    "lp_calls",
    "enum_count",
    "oracle_calls",
    "wall_ms",
]


def gen(tmp_path, family="partition", n=6, seed=7, name="inst.json"):
    path = tmp_path / name
    assert main(["gen", "--family", family, "--n", str(n), "--seed", str(seed), "-o", str(path)]) == 0
    return path


class TestSolve:
    def test_solve_with_report(self, tmp_path, capsys):
        inst = gen(tmp_path)
        report = tmp_path / "report.json"
        code = main(
            ["solve", "--instance", str(inst), "--eps", "1/3", "--exact", "--report", str(report)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "profit:" in out and "ratio:" in out
        doc = json.loads(report.read_text())
        for key in (
            "solution",
            "profit",
            "eps_target",
            "eps_internal",
            "alpha_grid",
            "alpha_best",
            "enum_counts",
            "lp_calls",
            "lp_unique",
            "oracle_calls",
            "wall_ms",
            "dropped",
            "exact_profit",
            "ratio",
        ):
            assert key in doc
        assert doc["eps_target"] == "1/3"

    def test_jobs_reports_identical_modulo_timing(self, tmp_path):
        inst = gen(tmp_path, family="graphic", n=8, seed=11)
        docs = []
        for jobs in ("1", "4"):
            report = tmp_path / f"report-{jobs}.json"
            assert main(
                ["solve", "--instance", str(inst), "--eps", "1/3", "--jobs", jobs,
                 "--report", str(report)]
            ) == 0
            doc = json.loads(report.read_text())
            doc.pop("wall_ms")
            docs.append(doc)
        assert docs[0] == docs[1]

    def test_bad_eps_is_validation_error(self, tmp_path):
        inst = gen(tmp_path)
        assert main(["solve", "--instance", str(inst), "--eps", "zero"]) == 2
        assert main(["solve", "--instance", str(inst), "--eps", "3/2"]) == 2


class TestExact:
    def test_exact_prints_profit(self, tmp_path, capsys):
        inst = gen(tmp_path, family="uniform", n=5, seed=3)
        assert main(["exact", "--instance", str(inst)]) == 0
        out = capsys.readouterr().out
        assert "profit:" in out and "nodes:" in out

    def test_scale_cap_exit_code(self, tmp_path, capsys):
        inst = gen(tmp_path, family="uniform", n=25, seed=3)
        assert main(["exact", "--instance", str(inst)]) == 3


class TestVerify:
    def test_verify_generated_instance(self, tmp_path, capsys):
        inst = gen(tmp_path, family="partition", n=7, seed=19)
        assert main(["verify", "--instance", str(inst), "--eps", "1/3"]) == 0
        out = capsys.readouterr().out
        assert "PASS matroid axioms" in out
        assert "FAIL" not in out


class TestGenAndValidation:
    def test_gen_deterministic_files(self, tmp_path):
        a = gen(tmp_path, seed=5, name="a.json")
        b = gen(tmp_path, seed=5, name="b.json")
        assert a.read_text() == b.read_text()

    def test_invalid_instance_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"budget": 3}')
        assert main(["solve", "--instance", str(bad), "--eps", "1/3"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_family_exit_code(self, tmp_path):
        out = tmp_path / "x.json"
        assert main(["gen", "--family", "mystery", "--n", "4", "--seed", "1", "-o", str(out)]) == 2

    def test_dropped_singleton_warning(self, tmp_path, capsys):
        doc = {
            "budget": "3",
            "elements": [
                {"cost": "1", "profit": "2"},
                {"cost": "1", "profit": "1"},
            ],
            "matroid": {"kind": "graphic", "num_vertices": 2, "edges": [[0, 0], [0, 1]]},
        }
        path = tmp_path / "loop.json"
        path.write_text(json.dumps(doc))
        assert main(["solve", "--instance", str(path), "--eps", "1/3"]) == 0
        assert "dropped dependent singleton" in capsys.readouterr().err


class TestBench:
    def test_bench_writes_expected_columns(self, tmp_path, capsys):
        for i, family in enumerate(("uniform", "graphic", "partition")):
            gen(tmp_path, family=family, n=5 + i, seed=i, name=f"{family}.json")
        out_csv = tmp_path / "bench.csv"
        assert main(["bench", "--dir", str(tmp_path), "--eps", "1/3", "--csv", str(out_csv)]) == 0
        with open(out_csv, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 3
        assert list(rows[0].keys()) == BENCH_COLUMNS
        for row in rows:
            assert row["eps"] == "1/3"
            assert int(row["lp_calls"]) >= 1

    def test_bench_empty_dir_is_validation_error(self, tmp_path):
        assert main(["bench", "--dir", str(tmp_path), "--eps", "1/3", "--csv", str(tmp_path / "o.csv")]) == 2


class TestConsoleScript:
    def test_module_entry_point(self, tmp_path):
        inst = gen(tmp_path)
        proc = subprocess.run(
            [sys.executable, "-m", "budgetmatroid.cli", "solve", "--instance", str(inst), "--eps", "1/3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "profit:" in proc.stdout
