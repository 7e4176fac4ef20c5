"""The command-line surface: subcommands, exit codes, reproducibility."""

import json

import pytest

from maxcurves.cli import EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_field_info(capsys):
    code, payload = run_json(capsys, "field-info", "--t", "2", "--level", "2")
    assert code == EXIT_OK
    assert payload["m"] == 8 and payload["q"] == 4 and payload["schema"] == 1


def test_verify_maximal_trace_q8(capsys):
    code, payload = run_json(capsys, "verify-maximal", "--curve", "trace", "--t", "3")
    assert code == EXIT_OK
    assert payload["count"] == 257 and payload["expected"] == 257 and payload["maximal"]


def test_count_level_2(capsys):
    code, payload = run_json(capsys, "count", "--curve", "hermitian", "--t", "2", "--level", "2")
    assert code == EXIT_OK
    assert payload["count"] == 65


def test_orders_subcommand(capsys):
    code, payload = run_json(
        capsys, "orders", "--curve", "trace", "--t", "2", "--point", "0,0", "--level", "1"
    )
    assert code == EXIT_OK
    assert payload["orders"] == [0, 1, 2, 5] and payload["class"] == "rational"
    code, payload = run_json(capsys, "orders", "--curve", "trace", "--t", "3", "--point", "inf")
    assert code == EXIT_OK
    assert payload["orders"] == [0, 1, 5, 9] and payload["class"] == "at-P0"


def test_orders_hermitian_point(capsys):
    # (1, z) lies on y^4 + y = x^5 over GF(16) since z^4 + z = 1
    code, payload = run_json(
        capsys, "orders", "--curve", "hermitian", "--t", "2", "--point", "1,2"
    )
    assert code == EXIT_OK
    assert payload["orders"] == [0, 1, 2, 5]


def test_expand_subcommand(capsys):
    code, payload = run_json(
        capsys, "expand", "--curve", "trace", "--t", "2", "--point", "0,0",
        "--precision", "21",
    )
    assert code == EXIT_OK
    assert payload["valuation"] == 5
    assert [i for i, c in enumerate(payload["coefficients"]) if c != "0"] == [5, 10, 20]


def test_semigroup_subcommand(capsys):
    code, payload = run_json(capsys, "semigroup", "--generators", "4,9")
    assert code == EXIT_OK
    assert payload["genus"] == 12
    code, payload = run_json(
        capsys, "semigroup", "--generators", "2,5", "--dims", "5,10"
    )
    assert payload["dims"] == {"5": 3, "10": 8}


def test_frobenius_check(capsys):
    code, payload = run_json(
        capsys, "frobenius-check", "--curve", "trace", "--t", "2", "--samples", "10"
    )
    assert code == EXIT_OK
    assert payload["orders"] == [0, 1, 4]
    assert payload["checked"] == 10


def test_cover_check(capsys):
    code, payload = run_json(capsys, "cover-check", "--t", "2", "--level", "2")
    assert code == EXIT_OK
    assert payload["counts"]["double_count_identity"]
    assert payload["fiber_histogram"] == {"2": 32}  # all affine rational targets


def test_normalize_from_file(tmp_path, capsys):
    curve = {
        "q": 4,
        "family": "trace-form",
        "terms": [[5, 0, "1"], [0, 2, "1"], [0, 1, "1"], [0, 0, "6"]],
    }
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(curve))
    code, payload = run_json(capsys, "normalize", "--file", str(path))
    assert code == EXIT_OK
    assert payload["standard"]
    assert payload["record"] == [{"kind": "translate-y", "constant": "2"}]


def test_normalize_failure_exits_1(tmp_path, capsys):
    curve = {
        "q": 4,
        "family": "trace-form",
        "terms": [[5, 0, "1"], [0, 2, "2"], [0, 1, "1"]],  # a = (g, 1) breaks (ii)
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(curve))
    code, payload = run_json(capsys, "normalize", "--file", str(path))
    assert code == EXIT_CHECK_FAILED
    assert "identities failed" in payload["error"]


@pytest.mark.parametrize("t", [2, 3])
def test_full_suite_exits_zero(capsys, t):
    code, payload = run_json(capsys, "full-suite", "--t", str(t), "--samples", "10")
    assert code == EXIT_OK
    assert payload["all_pass"]


def test_config_errors_exit_2(capsys):
    code, payload = run_json(capsys, "count", "--curve", "trace", "--t", "4", "--level", "2")
    assert code == EXIT_CONFIG  # census ceiling
    code, payload = run_json(capsys, "orders", "--curve", "trace", "--t", "9", "--point", "0,0")
    assert code == EXIT_CONFIG  # t out of range
    code, payload = run_json(
        capsys, "orders", "--curve", "trace", "--t", "2", "--point", "zz"
    )
    assert code == EXIT_CONFIG  # malformed point
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_CONFIG  # argparse rejects unknown subcommands


def test_same_seed_byte_identical(capsys):
    _, first = run_cli(capsys, "frobenius-check", "--t", "2", "--samples", "5", "--seed", "7")
    _, second = run_cli(capsys, "frobenius-check", "--t", "2", "--samples", "5", "--seed", "7")
    assert first == second
    _, third = run_cli(capsys, "frobenius-check", "--t", "2", "--samples", "5", "--seed", "8")
    assert first != third


def test_table_format(capsys):
    code, out = run_cli(capsys, "semigroup", "--generators", "2,5", "--format", "table")
    assert code == EXIT_OK
    assert "genus\t2" in out
