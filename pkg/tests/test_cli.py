"""CLI surface: verb wiring, JSON reports, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from icdof.cli import run


@pytest.fixture
def files(tmp_path):
    def write(name: str, obj) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


@pytest.fixture
def prop4_file(files):
    return files(
        "prop4.json",
        {
            "atoms": [
                {"value": "0", "prob": "8/15625"},
                {"value": "1", "prob": "4/625"},
                {"value": "2", "prob": "2/25"},
                {"value": "3", "prob": "14267/15625"},
            ]
        },
    )


@pytest.fixture
def coin_file(files):
    return files(
        "coin.json",
        {"atoms": [{"value": "0", "prob": "1/2"}, {"value": "1", "prob": "1/2"}]},
    )


@pytest.fixture
def rational_matrix_file(files):
    return files(
        "rational.json",
        {"K": 3, "entries": [["1", "2", "3"], ["4", "5", "6"], ["7", "8", "9"]]},
    )


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestVerbs:
    def test_hlambda(self, capsys, prop4_file):
        code, report = run_json(
            capsys, ["hlambda", "--lambda", "-1", "--u", prop4_file, "--v", prop4_file]
        )
        assert code == 0
        assert report["bound"] == pytest.approx(1.13258, abs=1e-4)

    def test_bound_floor(self, capsys):
        code, report = run_json(capsys, ["bound-floor", "--k", "3", "--d", "3", "--n", "4"])
        assert code == 0
        assert report == {"floor": -2.625}

    def test_condition_violated(self, capsys, rational_matrix_file):
        code, report = run_json(
            capsys, ["condition", "--matrix", rational_matrix_file, "--degree", "2"]
        )
        assert code == 0
        assert report["status"] == "violated"
        assert report["witness"]["combination"]

    def test_condition_generic_holds(self, capsys, files):
        matrix = files(
            "generic.json", {"K": 2, "entries": [["generic", "generic"], ["generic", "generic"]]}
        )
        code, report = run_json(capsys, ["condition", "--matrix", matrix, "--degree", "2"])
        assert code == 0
        assert report["status"] == "holds-up-to-bound"

    def test_bound_thm1_generic(self, capsys):
        code, report = run_json(capsys, ["bound-thm1", "--k", "2", "--d", "0", "--n", "2"])
        assert code == 0
        assert report["bound"] == pytest.approx(1.0, abs=1e-9)
        assert {"bound", "per_user", "r_log", "caveat", "params"} <= report.keys()

    def test_bound_integer(self, capsys, files):
        matrix = files("ones.json", {"K": 3, "entries": [[1, 1, 1], [1, 1, 1], [1, 1, 1]]})
        code, report = run_json(capsys, ["bound-integer", "--matrix", matrix, "--n", "2"])
        assert code == 0
        assert report["bound"] == pytest.approx(0.4184144184766949, abs=1e-9)
        assert report["closed_form"] == pytest.approx(report["bound"], abs=1e-9)

    def test_ratio_thm3(self, capsys, coin_file, files):
        point = files("pt.json", {"atoms": [{"value": "0", "prob": "1"}]})
        code, report = run_json(
            capsys, ["ratio-thm3", "--k", "2", "--dist", coin_file, "--dist", point]
        )
        assert code == 0
        assert report["ratio"] == pytest.approx(1.0, abs=1e-9)

    def test_infodim(self, capsys, files):
        ifs = files("cantor.json", {"r": "1/3", "w": ["0", "2"], "probs": ["1/2", "1/2"]})
        code, report = run_json(capsys, ["infodim", "--ifs", ifs, "--m", "8"])
        assert code == 0
        assert report["dimension"] == pytest.approx(0.6309297535714575, abs=1e-9)
        assert report["empirical"] == pytest.approx(report["dimension"], abs=0.02)
        assert report["quantization"] == 2187
        assert "caveat" in report

    def test_sumset(self, capsys, files):
        a = files("a.json", {"elements": ["0", "1", "2"]})
        b = files("b.json", {"elements": ["10", "12"]})
        code, report = run_json(capsys, ["sumset", "--a", a, "--b", b])
        assert code == 0
        assert report["sizes"] == {"a": 3, "b": 2, "sum": 5}
        assert report["sum"]["elements"] == ["10", "11", "12", "13", "14"]
        assert report["trivial_bounds"] == {"lower_ok": True, "upper_ok": True}
        assert report["progressions"]["a"] == {"start": "0", "step": "1", "length": 3}
        assert report["progressions"]["sum"]["step"] == "1"

    def test_ineq_suite(self, capsys, coin_file):
        code, report = run_json(capsys, ["ineq-suite", "--u", coin_file, "--v", coin_file])
        assert code == 0
        assert report["slacks"]["triple_difference"] == pytest.approx(1.0, abs=1e-9)

    def test_optimize_hlambda(self, capsys):
        argv = [
            "optimize", "--target", "hlambda", "--lambda", "-1", "--n", "4",
            "--restarts", "2", "--max-iters", "30", "--seed", "3",
        ]
        code, report = run_json(capsys, argv)
        assert code == 0
        assert report["best_value"] >= 1.13258 - 1e-4
        assert len(report["dists"]) == 2
        assert len(report["trace"]) == 2

    def test_optimize_thm3(self, capsys, files):
        matrix = files(
            "g3.json",
            {"K": 3, "entries": [["generic"] * 3, ["generic"] * 3, ["generic"] * 3]},
        )
        argv = [
            "optimize", "--target", "thm3", "--matrix", matrix, "--n", "2",
            "--restarts", "2", "--max-iters", "20",
        ]
        code, report = run_json(capsys, argv)
        assert code == 0
        assert 1.0 - 1e-9 <= report["best_value"] <= 1.5 + 1e-9


class TestExitCodes:
    def test_condition_violation_carries_witness(self, capsys, rational_matrix_file):
        code, report = run_json(
            capsys, ["bound-thm1", "--matrix", rational_matrix_file, "--d", "1", "--n", "2"]
        )
        assert code == 2
        assert report["code"] == "condition-star-violated"
        assert "witness" in report

    def test_zero_lambda(self, capsys, coin_file):
        code, report = run_json(
            capsys, ["hlambda", "--lambda", "0", "--u", coin_file, "--v", coin_file]
        )
        assert code == 2
        assert report["code"] == "invalid-input"

    def test_missing_file(self, capsys):
        code, report = run_json(capsys, ["condition", "--matrix", "nope.json", "--degree", "1"])
        assert code == 2
        assert report["code"] == "parse-error"

    def test_budget_exceeded(self, capsys, coin_file, prop4_file):
        code, report = run_json(
            capsys,
            ["hlambda", "--lambda", "-1", "--u", prop4_file, "--v", coin_file, "--budget", "3"],
        )
        assert code == 2
        assert report["code"] == "budget-exceeded"

    def test_unknown_verb(self, capsys):
        code, report = run_json(capsys, ["frobnicate"])
        assert code == 2
        assert report["code"] == "parse-error"

    def test_missing_required_flag(self, capsys):
        code, report = run_json(capsys, ["condition", "--degree", "1"])
        assert code == 2
        assert report["code"] == "parse-error"

    def test_wrong_dist_count(self, capsys, coin_file):
        code, report = run_json(capsys, ["ratio-thm3", "--k", "3", "--dist", coin_file])
        assert code == 2
        assert report["code"] == "invalid-input"

    def test_decimal_scalar_rejected(self, capsys, files):
        bad = files("bad.json", {"atoms": [{"value": "0.5", "prob": "1"}]})
        code, report = run_json(capsys, ["ineq-suite", "--u", bad, "--v", bad])
        assert code == 2
        assert report["code"] == "parse-error"
        assert "fraction" in report["message"]

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
        assert "usage" in capsys.readouterr().out.lower()


class TestOutputContract:
    def test_optimizer_output_is_byte_identical_across_runs(self, capsys):
        argv = [
            "optimize", "--target", "hlambda", "--lambda", "-1", "--n", "3",
            "--restarts", "2", "--max-iters", "25", "--seed", "9",
        ]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_floats_are_limited_to_twelve_significant_digits(self, capsys):
        code, report = run_json(capsys, ["bound-floor", "--k", "3", "--d", "1", "--n", "3"])
        assert code == 0
        value = report["floor"]
        assert float(f"{value:.12g}") == value  # already rounded, idempotent

    def test_rationals_stay_strings(self, capsys, prop4_file):
        argv = [
            "optimize", "--target", "hlambda", "--lambda", "-1", "--n", "2",
            "--restarts", "1", "--max-iters", "5",
        ]
        code, report = run_json(capsys, argv)
        assert code == 0
        for dist in report["dists"]:
            for atom in dist["atoms"]:
                assert isinstance(atom["value"], str)
                assert isinstance(atom["prob"], str)

    def test_progress_goes_to_stderr(self, capsys):
        argv = [
            "optimize", "--target", "hlambda", "--lambda", "1", "--n", "2",
            "--restarts", "1", "--max-iters", "5",
        ]
        assert run(argv) == 0
        captured = capsys.readouterr()
        assert "restart" in captured.err
        json.loads(captured.out)  # stdout is pure JSON
