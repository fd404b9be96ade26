"""Command-line surface: parsing, payload shapes, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from sadicsets.cli import RunConfig, build_parser, config_from_args, dispatch, main
from sadicsets.errors import SadicError


def run_cli(*argv):
    parser = build_parser()
    config = config_from_args(parser.parse_args(list(argv)))
    return dispatch(config)


class TestParsing:
    def test_defaults(self):
        args = build_parser().parse_args(["dim", "--s", "3", "--u", "0"])
        config = config_from_args(args)
        assert config.tol == 1e-12
        assert config.fmt == "json"
        assert config.workers == 1

    def test_workers_env(self, monkeypatch):
        monkeypatch.setenv("SADICSETS_WORKERS", "3")
        args = build_parser().parse_args(["reproduce"])
        assert config_from_args(args).workers == 3

    def test_workers_env_garbage(self, monkeypatch):
        monkeypatch.setenv("SADICSETS_WORKERS", "many")
        args = build_parser().parse_args(["reproduce"])
        with pytest.raises(SadicError):
            config_from_args(args)

    def test_rejects_bad_tol(self):
        args = build_parser().parse_args(
            ["dim", "--s", "3", "--u", "0", "--tol", "0"]
        )
        with pytest.raises(SadicError):
            config_from_args(args)

    def test_base_forms(self):
        for form in ("1,2", "12"):
            args = build_parser().parse_args(
                ["cylinder", "--s", "3", "--u", "0", "--base", form]
            )
            assert config_from_args(args).base == (1, 2)

    def test_config_is_frozen(self):
        config = RunConfig(subcommand="normal", s=3)
        with pytest.raises(AttributeError):
            config.s = 4


class TestDim:
    def test_marker_form(self):
        code, text = run_cli("dim", "--s", "3", "--u", "0")
        payload = json.loads(text)
        assert code == 0
        phi = (math.sqrt(5.0) + 1.0) / 2.0
        assert abs(payload["alpha"] - math.log(phi) / math.log(3)) < 1e-9
        assert payload["closed_form"] == "log((sqrt(5)+1)/2)/log(3)"

    def test_named_alphabet(self):
        code, text = run_cli("dim", "--alphabet", "sprime3")
        payload = json.loads(text)
        assert code == 0
        assert abs(payload["alpha"] - math.log(2) / (3 * math.log(3))) < 1e-9
        assert payload["prefix_free"] is True

    def test_tilde_spec(self):
        code, text = run_cli("dim", "--alphabet", "tilde:3")
        assert code == 0
        assert abs(json.loads(text)["alpha"] - math.log(2) / math.log(3)) < 1e-9

    def test_alphabet_file(self, tmp_path):
        f = tmp_path / "alpha.json"
        f.write_text(json.dumps({"s": 3, "combos": ["021", "102"]}))
        code, text = run_cli("dim", "--alphabet", str(f))
        assert code == 0
        assert abs(json.loads(text)["alpha"] - math.log(2) / (3 * math.log(3))) < 1e-9

    def test_missing_file_is_domain_error(self, capsys):
        assert main(["dim", "--alphabet", "/nonexistent/alpha.json"]) == 1

    def test_malformed_file_is_domain_error(self, tmp_path):
        f = tmp_path / "alpha.json"
        f.write_text("{not json")
        assert main(["dim", "--alphabet", str(f)]) == 1

    def test_needs_marker_or_alphabet(self, capsys):
        assert main(["dim", "--s", "3"]) == 1


class TestSubcommands:
    def test_cylinder_payload(self):
        code, text = run_cli("cylinder", "--s", "3", "--u", "0", "--base", "1")
        payload = json.loads(text)
        assert code == 0
        assert payload["inf"] == {"num": "5", "den": "12", "approx": 5 / 12}
        assert payload["sup"]["num"] == "1"
        assert payload["diameter"]["den"] == "12"

    def test_gaps_payload(self):
        code, text = run_cli("gaps", "--s", "3", "--base", "", "--p", "1")
        payload = json.loads(text)
        assert code == 0
        assert payload["lower"]["num"] == "5"
        assert payload["lower"]["den"] == "18"
        assert payload["upper"]["den"] == "12"

    def test_generate_payload(self):
        code, text = run_cli(
            "generate", "--s", "3", "--u", "0", "--tail", "2", "--n", "6"
        )
        payload = json.loads(text)
        assert code == 0
        assert payload["digits"] == [0, 2, 0, 2, 0, 2]
        assert payload["value"] == {"num": "1", "den": "4", "approx": 0.25}

    def test_generate_rejects_marker_block(self):
        assert main(["generate", "--s", "3", "--u", "1", "--blocks", "1"]) == 1

    def test_boxcount_csv(self):
        code, text = run_cli(
            "boxcount", "--s", "3", "--u", "0", "--format", "csv"
        )
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "eps_num,eps_den,eps_approx,boxes"
        assert lines[1].startswith("1,81,")
        assert lines[1].endswith(",8")

    def test_boxcount_json_slope(self):
        code, text = run_cli("boxcount", "--s", "3", "--u", "0")
        payload = json.loads(text)
        assert abs(payload["slope"] - 0.438) < 0.05

    def test_measure_csv_default(self):
        code, text = run_cli("measure", "--s", "3", "--u", "0", "--k", "3")
        lines = text.splitlines()
        assert lines[0] == "k,num,den,approx"
        assert lines[1] == "1,1,9," + repr(1 / 9)
        assert len(lines) == 4

    def test_measure_budget_exit(self):
        assert main(["measure", "--s", "4", "--u", "0", "--k", "12"]) == 2

    def test_freq_payload(self):
        code, text = run_cli(
            "freq", "--s", "3", "--period", "021", "--k", "300", "--u", "0"
        )
        payload = json.loads(text)
        assert code == 0
        assert payload["profile"]["counts"] == [100, 100, 100]
        assert payload["residual"]["residual"] == 0
        assert payload["residual"]["at_boundary"] is True

    def test_normal_verdicts(self):
        _, text3 = run_cli("normal", "--s", "3")
        _, text4 = run_cli("normal", "--s", "4")
        assert json.loads(text3)["exists"] is True
        assert json.loads(text4)["exists"] is False


class TestReproduce:
    def test_filter_runs_single_row(self):
        code, text = run_cli(
            "reproduce", "--only", "closed-form", "--format", "table"
        )
        assert code == 0
        assert "PASS closed-form-dimensions" in text
        assert "1/1 criteria passed" in text

    def test_unmatched_filter_fails(self):
        assert main(["reproduce", "--only", "no-such-criterion"]) == 1

    def test_json_payload_has_no_runtimes(self):
        code, text = run_cli(
            "reproduce", "--only", "moran-edge", "--format", "json"
        )
        payload = json.loads(text)
        assert code == 0
        rows = payload["results"]
        assert rows and all("runtime" not in row for row in rows)
        assert all(row["passed"] for row in rows)


class TestHarness:
    def test_exit_zero_and_stdout(self, capsys):
        assert main(["normal", "--s", "3"]) == 0
        out = capsys.readouterr().out
        assert json.loads(out)["exists"] is True

    def test_bad_flag_exits_one(self, capsys):
        assert main(["dim", "--nonsense"]) == 1

    def test_bad_subcommand_exits_one(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_domain_error_exits_one(self, capsys):
        assert main(["cylinder", "--s", "3", "--u", "0", "--base", "7"]) == 1

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "result.json"
        assert main(["normal", "--s", "3", "--output", str(out)]) == 0
        text = out.read_text()
        assert text.endswith("\n")
        assert json.loads(text)["exists"] is True
        assert capsys.readouterr().out == ""

    def test_byte_determinism(self):
        runs = {run_cli("boxcount", "--s", "3", "--u", "0")[1] for _ in range(3)}
        assert len(runs) == 1

    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sadicsets.cli", "dim", "--s", "3", "--u", "1"],
            capture_output=True,
            text=True,
            check=True,
        )
        assert json.loads(proc.stdout)["alpha"] == 0.0
