"""
Tests for the command-line surface: exit codes and the JSON printed on stdout
"""

import json

import pytest

from main import run


def output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestVerify:
    def test_passing_suite(self, capsys):
        code = run(["verify", "--suite", "heisenberg", "--r", "1", "--max-size", "2", "--radius", "1",
                    "--mode", "probe", "--seed", "7"])
        payload = output(capsys)
        assert code == 0
        assert payload["verdict"] == "pass"
        assert payload["suites"][0]["suite"] == "heisenberg"
        assert payload["config_hash"].startswith("0x")

    def test_same_flags_print_the_same_bytes(self, capsys):
        argv = ["verify", "--suite", "dimensions", "--r", "2", "--seed", "3"]
        run(argv)
        first = capsys.readouterr().out
        run(argv)
        assert capsys.readouterr().out == first

    def test_unknown_suite(self, capsys):
        assert run(["verify", "--suite", "no-such"]) == 2
        assert "Unknown suite" in capsys.readouterr().err

    def test_suite_from_another_command(self):
        assert run(["verify", "--suite", "mish"]) == 2

    def test_missing_suite_flag(self):
        assert run(["verify"]) == 2

    def test_out_of_range_rank(self):
        assert run(["verify", "--suite", "heisenberg", "--r", "0"]) == 2


class TestWMatrix:
    def test_vacuum_entry(self, capsys):
        code = run(["wmatrix", "--r", "1", "--d", "0", "--k", "1", "--size-from", "0", "--size-to", "1"])
        payload = output(capsys)
        assert code == 0
        assert payload["operator"] == "W[0,1]"
        first = payload["entries"][0]
        assert (first["row"], first["column"], first["value"]) == ([[]], [[]], "u1")

    def test_bad_window(self):
        assert run(["wmatrix", "--d", "0", "--k", "1", "--size-from", "2", "--size-to", "1"]) == 2


class TestExt:
    def test_one_box_source(self, capsys):
        code = run(["ext", "--r", "1", "--lambda", "", "--lambda-prime", "1"])
        payload = output(capsys)
        assert code == 0
        assert payload["lambda"] == [[]]
        assert payload["lambda_prime"] == [[1]]
        assert payload["character_agrees"] is True

    def test_wrong_number_of_components(self):
        assert run(["ext", "--r", "2", "--lambda", "1", "--lambda-prime", "1|"]) == 2


class TestNekrasov:
    def test_table(self, capsys):
        code = run(["nekrasov", "--r", "1", "--max-instanton", "1"])
        payload = output(capsys)
        assert code == 0
        assert [t["size_vector"] for t in payload["terms"]] == [[0], [1]]
        assert payload["terms"][0]["value"] == "1"

    @pytest.mark.parametrize("item", ["q1", "=1", "q1=abc", "q1=1/0", "zz=1"])
    def test_bad_specialization(self, item):
        assert run(["nekrasov", "--r", "1", "--max-instanton", "1", "--specialize", item]) == 2

    def test_specialization_needs_exact(self):
        assert run(["nekrasov", "--r", "1", "--max-instanton", "1", "--mode", "probe", "--specialize", "m=2"]) == 2


class TestShuffle:
    def test_build(self, capsys):
        code = run(["shuffle", "build", "--family", "P", "--first", "2", "--second", "1"])
        payload = output(capsys)
        assert code == 0
        assert payload["variables"] == 2
        assert payload["degree"] == 1
        assert payload["wheel"] is True

    def test_eval_of_a_single_variable(self, capsys):
        code = run(["shuffle", "eval", "--family", "P", "--first", "1", "--second", "2"])
        payload = output(capsys)
        assert code == 0
        assert payload["phi_x"] == payload["phi_x_expected"]

    def test_bad_family_arguments(self):
        assert run(["shuffle", "build", "--family", "P", "--first", "0", "--second", "1"]) == 2


class TestClassical:
    def test_eps_order_below_rank(self):
        assert run(["classical", "--suite", "limit", "--r", "2", "--eps-order", "2"]) == 2
