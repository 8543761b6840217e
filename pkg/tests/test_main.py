# tests/test_main.py
import argparse
import json
import logging

import pytest

from lyndon_bwt import main
from lyndon_bwt.core.textcore import IntArray, read_array, write_array
from lyndon_bwt.exceptions import InvariantViolation


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    """No stray env overrides; root logger handlers added by run() are removed afterwards."""
    monkeypatch.delenv("LYNDON_BWT_WIDTH", raising=False)
    monkeypatch.delenv("LYNDON_BWT_LOG_LEVEL", raising=False)
    monkeypatch.chdir(tmp_path)
    root = logging.getLogger()
    before = root.handlers[:]
    level = root.level
    yield
    for handler in [h for h in root.handlers[:] if h not in before]:
        handler.close()
        root.removeHandler(handler)
    root.setLevel(level)


@pytest.fixture
def sys_exit(mocker):
    return mocker.patch('sys.exit', side_effect=SystemExit)


@pytest.fixture
def banana_file(tmp_path):
    path = tmp_path / "banana.txt"
    path.write_bytes(b"banana")
    return path


def run_cli(*argv: str) -> None:
    main.run(["-c", "no-config.ini", *argv])


def test_lyndon_bwt_and_nsv_routes(banana_file, tmp_path, sys_exit):
    """Both routes write the same Lyndon array file."""
    run_cli("lyndon", str(banana_file), "--algo", "bwt", "--out", str(tmp_path / "bwt.lam"))
    run_cli("lyndon", str(banana_file), "--algo", "nsv", "--out", str(tmp_path / "nsv.lam"))
    assert read_array(tmp_path / "bwt.lam").tolist() == [1, 2, 1, 2, 1, 1, 1]
    assert (tmp_path / "bwt.lam").read_bytes() == (tmp_path / "nsv.lam").read_bytes()
    sys_exit.assert_not_called()


def test_lyndon_default_output_and_report(banana_file, capsys, sys_exit):
    """--report prints one bench-v1 JSON object on stdout; logs stay off stdout."""
    run_cli("lyndon", str(banana_file), "--report")
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1
    report = json.loads(out[0])
    assert report["schema"] == "bench-v1"
    assert report["n"] == 7
    assert report["algo"] == "bwt"
    assert list(report["seconds"]) == ["sa_bwt", "lf", "lambda"]
    assert report["stack"]["high_water"] == 4
    assert read_array(f"{banana_file}.lambda").tolist() == [1, 2, 1, 2, 1, 1, 1]


def test_lyndon_oracle_on_unary(tmp_path, sys_exit):
    path = tmp_path / "unary.txt"
    path.write_bytes(b"a" * 512)
    run_cli("lyndon", str(path), "--algo", "oracle", "--out", str(tmp_path / "oracle.lam"))
    run_cli("lyndon", str(path), "--algo", "nsv", "--out", str(tmp_path / "nsv.lam"))
    assert read_array(tmp_path / "oracle.lam").tolist() == [1] * 513
    assert (tmp_path / "oracle.lam").read_bytes() == (tmp_path / "nsv.lam").read_bytes()


def test_lyndon_width_64(banana_file, tmp_path, sys_exit):
    run_cli("--width", "64", "lyndon", str(banana_file), "--out", str(tmp_path / "wide.lam"))
    lam = read_array(tmp_path / "wide.lam")
    assert lam.width == 64
    assert lam.tolist() == [1, 2, 1, 2, 1, 1, 1]


def test_bwt_unbwt_round_trip(banana_file, tmp_path, sys_exit):
    run_cli("bwt", str(banana_file))
    bwt_path = tmp_path / "banana.txt.bwt"
    assert bwt_path.read_bytes() == b"annb\x00aa"

    run_cli("unbwt", str(bwt_path), "--out", str(tmp_path / "with_sentinel"))
    assert (tmp_path / "with_sentinel").read_bytes() == b"banana\x00"

    run_cli("unbwt", str(bwt_path), "--out", str(tmp_path / "plain"), "--strip-sentinel")
    assert (tmp_path / "plain").read_bytes() == b"banana"


def test_bp_dump_at_and_verify(banana_file, capsys, sys_exit):
    run_cli("bp", str(banana_file), "--dump")
    assert capsys.readouterr().out.strip() == "()(())(())()()"
    run_cli("bp", str(banana_file), "--at", "4")
    assert capsys.readouterr().out.strip() == "2"
    run_cli("bp", str(banana_file), "--verify", "--stack-mode", "bitstack", "--select-index", "sampled")
    assert capsys.readouterr().out.strip() == "OK"
    sys_exit.assert_not_called()


def test_bp_file_round_trip_and_lambda_verify(banana_file, tmp_path, capsys, sys_exit):
    """A built BP file is detected by its header and checked against a lambda file."""
    run_cli("bp", str(banana_file), "--out", str(tmp_path / "banana.bp"))
    assert (tmp_path / "banana.bp").read_bytes()[:8] == b"LYNBP001"
    run_cli("lyndon", str(banana_file), "--out", str(tmp_path / "banana.lam"))

    run_cli("bp", str(tmp_path / "banana.bp"), "--at", "2")
    assert capsys.readouterr().out.strip() == "2"
    run_cli("bp", str(tmp_path / "banana.bp"), "--verify", "--lambda", str(tmp_path / "banana.lam"))
    assert capsys.readouterr().out.strip() == "OK"


def test_bp_from_bwt_input(banana_file, tmp_path, capsys, sys_exit):
    run_cli("bwt", str(banana_file), "--out", str(tmp_path / "banana.bwt"))
    run_cli("bp", str(tmp_path / "banana.bwt"), "--bwt", "--dump")
    assert capsys.readouterr().out.strip() == "()(())(())()()"


def test_bp_verify_mismatch_is_a_data_error(banana_file, tmp_path, capsys, sys_exit):
    wrong = tmp_path / "wrong.lam"
    write_array(wrong, IntArray.from_values([1, 1, 1, 2, 1, 1, 1]))
    with pytest.raises(SystemExit):
        run_cli("bp", str(banana_file), "--verify", "--lambda", str(wrong))
    sys_exit.assert_called_once_with(main.EXIT_DATA)
    assert "Error: lambda_at(2) differs" in capsys.readouterr().err


def test_bp_verify_internal_disagreement_is_an_invariant_violation(banana_file, mocker, capsys, sys_exit):
    mocker.patch("lyndon_bwt.main.bwt_lyndon", return_value=(None, IntArray.from_values([1] * 7)))
    with pytest.raises(SystemExit):
        run_cli("bp", str(banana_file), "--verify")
    sys_exit.assert_called_once_with(main.EXIT_INVARIANT)
    assert "Error: Internal invariant violated." in capsys.readouterr().err


def test_bp_at_out_of_range(banana_file, capsys, sys_exit):
    with pytest.raises(SystemExit):
        run_cli("bp", str(banana_file), "--at", "8")
    sys_exit.assert_called_once_with(main.EXIT_DATA)


def test_missing_input_exits_with_data_error(tmp_path, capsys, sys_exit):
    with pytest.raises(SystemExit):
        run_cli("lyndon", str(tmp_path / "absent.txt"))
    sys_exit.assert_called_once_with(main.EXIT_DATA)
    err = capsys.readouterr().err
    assert "Error: File not found" in err


def test_sentinel_conflict_exits_with_data_error(tmp_path, capsys, sys_exit):
    path = tmp_path / "zero.txt"
    path.write_bytes(b"ba\x00na")
    with pytest.raises(SystemExit):
        run_cli("bwt", str(path))
    sys_exit.assert_called_once_with(main.EXIT_DATA)
    assert "Byte 0 is reserved" in capsys.readouterr().err


def test_invariant_violation_exit_code(banana_file, mocker, sys_exit):
    mocker.patch("lyndon_bwt.main.lyndon_array_stats", side_effect=InvariantViolation("stack underflow"))
    with pytest.raises(SystemExit):
        run_cli("lyndon", str(banana_file))
    sys_exit.assert_called_once_with(main.EXIT_INVARIANT)


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["lyndon"],
    ["lyndon", "x", "--algo", "maxlyn"],
    ["--width", "48", "lyndon", "x"],
    ["bp", "x", "--at", "1", "--dump"],
])
def test_usage_errors_exit_1(argv, sys_exit, capsys):
    with pytest.raises(SystemExit):
        run_cli(*argv)
    sys_exit.assert_called_with(main.EXIT_USAGE)
    assert "usage:" in capsys.readouterr().err


def test_invalid_env_setting_is_a_usage_error(banana_file, monkeypatch, capsys, sys_exit):
    monkeypatch.setenv("LYNDON_BWT_WIDTH", "48")
    with pytest.raises(SystemExit):
        run_cli("lyndon", str(banana_file))
    sys_exit.assert_called_once_with(main.EXIT_USAGE)
    assert "Error: Configuration failed." in capsys.readouterr().err


def test_settings_precedence(monkeypatch):
    """CLI flag beats environment, which beats the INI file, which beats defaults."""
    config = {"general": {"width": "64", "sorter": "naive"}, "bp": {"block_size": "256"},
              "logging": {"level": "WARNING"}}
    args = argparse.Namespace(width=None, sorter=None, block_size=128, log_level=None)
    monkeypatch.setenv("LYNDON_BWT_LOG_LEVEL", "DEBUG")
    settings = main.resolve_settings(config, args)
    assert settings.width == 64
    assert settings.sorter == "naive"
    assert settings.block_size == 128
    assert settings.log_level == "DEBUG"
    assert settings.stack_mode == "pairs"

    monkeypatch.setenv("LYNDON_BWT_WIDTH", "32")
    assert main.resolve_settings(config, argparse.Namespace(width=None)).width == 32
    assert main.resolve_settings(config, argparse.Namespace(width=64)).width == 64


def test_settings_reject_unknown_choices():
    with pytest.raises(ValueError, match="stack_mode"):
        main.resolve_settings({"bp": {"stack_mode": "deque"}}, argparse.Namespace())
    with pytest.raises(ValueError, match="Unknown algorithm"):
        main.resolve_settings({"bench": {"algos": "bwt, maxlyn"}}, argparse.Namespace())


def test_missing_config_logs_warning(banana_file, caplog, sys_exit):
    caplog.set_level(logging.WARNING)
    run_cli("lyndon", str(banana_file))
    assert "Config file no-config.ini not found; using defaults." in caplog.text


def test_config_file_is_used(banana_file, tmp_path, capsys, sys_exit):
    config = tmp_path / "custom.ini"
    config.write_text("[general]\nwidth = 64\n[logging]\nlevel = ERROR\n", encoding="utf-8")
    main.run(["-c", str(config), "lyndon", str(banana_file), "--out", str(tmp_path / "out.lam")])
    assert read_array(tmp_path / "out.lam").width == 64


def test_make_corpus_and_bench(tmp_path, capsys, sys_exit):
    """bench prints one JSON line per (file, algo, size) cell."""
    corpus = tmp_path / "corpus"
    run_cli("make-corpus", str(corpus), "--sizes", "64", "--sigmas", "2")
    written = capsys.readouterr().out.split()
    assert len(written) == 3

    run_cli("bench", "--corpus-dir", str(corpus), "--sizes", "32", "--algos", "bwt,nsv",
            "--repetitions", "1", "--maxlyn-sizes", "16")
    lines = capsys.readouterr().out.strip().splitlines()
    reports = [json.loads(line) for line in lines]
    assert len(reports) == 3 * 2 * 2 + 1
    assert all(r["schema"] == "bench-v1" and r["error"] is None for r in reports)
    assert reports[-1]["algo"] == "oracle"


def test_bench_missing_corpus(tmp_path, capsys, sys_exit):
    with pytest.raises(SystemExit):
        run_cli("bench", "--corpus-dir", str(tmp_path / "none"))
    sys_exit.assert_called_once_with(main.EXIT_DATA)


def test_fetch_corpus(tmp_path, capsys, sys_exit):
    manifest = tmp_path / "manifest.yaml"
    manifest.write_text(
        "corpus:\n"
        "  - name: dna\n    url: https://pizzachili.dcc.uchile.cl/texts/dna/dna.gz\n    size: 4\n"
        "  - name: english\n    url: https://pizzachili.dcc.uchile.cl/texts/nlang/english.gz\n    size: 9\n",
        encoding="utf-8",
    )
    (tmp_path / "dna").write_bytes(b"ACGT")
    run_cli("fetch-corpus", "--manifest", str(manifest), "--corpus-dir", str(tmp_path))
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0].split("\t")[:3] == ["dna", "ok", "4"]
    assert out[1].split("\t")[:2] == ["english", "missing"]
    sys_exit.assert_not_called()

    (tmp_path / "english").write_bytes(b"short")
    with pytest.raises(SystemExit):
        run_cli("fetch-corpus", "--manifest", str(manifest), "--corpus-dir", str(tmp_path))
    sys_exit.assert_called_once_with(main.EXIT_DATA)


def test_bp_file_with_bwt_flag_is_a_usage_error(banana_file, tmp_path, capsys, sys_exit):
    """--bwt names a BWT input; a parenthesis file given with it is rejected."""
    run_cli("bp", str(banana_file), "--out", str(tmp_path / "banana.bp"))
    with pytest.raises(SystemExit):
        run_cli("bp", str(tmp_path / "banana.bp"), "--bwt", "--dump")
    sys_exit.assert_called_once_with(main.EXIT_USAGE)
    assert "is a parenthesis file, not a BWT" in capsys.readouterr().err


def test_bp_sniffs_only_the_header(banana_file, tmp_path, mocker, capsys, sys_exit):
    run_cli("bp", str(banana_file), "--out", str(tmp_path / "banana.bp"))
    sniff = mocker.patch("lyndon_bwt.main.read_bytes", wraps=main.read_bytes)
    run_cli("bp", str(tmp_path / "banana.bp"), "--dump")
    assert capsys.readouterr().out.strip() == "()(())(())()()"
    sniff.assert_called_once_with(str(tmp_path / "banana.bp"), limit=len(main.BP_MAGIC))


def test_bp_missing_input_is_a_data_error(tmp_path, capsys, sys_exit):
    with pytest.raises(SystemExit):
        run_cli("bp", str(tmp_path / "missing.bp"))
    sys_exit.assert_called_once_with(main.EXIT_DATA)
    assert "File not found" in capsys.readouterr().err
