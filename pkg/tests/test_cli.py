import csv
import io
import json
import subprocess
import sys

import pytest

from gapscale import cli
from gapscale.cli import DATA_DICTIONARY, Scenario, columns, kinds, main, run, sweep, validate
from gapscale.errors import ConfigError

FAST = {
    "fredholm": {"s": 4.0},
    "toeplitz": {"n": 64, "s": 4.0},
    "asym-one-gap": {"s": 4.0},
    "asym-one-arc": {"n": 100, "theta1": 1.0, "theta2": -1.0},
    "asym-two-arc": {"n": 1000},
    "verify-one-arc": {"n": 256},
    "verify-legendre": {"n": 1024},
}


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def _main(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


@pytest.mark.parametrize("kind", kinds())
def test_every_column_is_documented(kind):
    rows = run(Scenario(kind, FAST.get(kind, {})))
    assert rows
    missing = [c for c in columns(rows) if c not in DATA_DICTIONARY]
    assert not missing
    assert all(r["kind"] == kind for r in rows)
    assert "wall_time" not in rows[0]


def test_validate_rejects_bad_parameters():
    with pytest.raises(ConfigError):
        validate(Scenario("fredholm", {"s": 1.0, "sigma": 2.0}))
    with pytest.raises(ConfigError):
        validate(Scenario("fredholm", {}))
    with pytest.raises(ConfigError):
        validate(Scenario("nonsense", {}))


def test_fredholm_at_zero_bandwidth(capsys):
    code, out = _main(["fredholm", "--s", "0"], capsys)
    assert code == 0
    (row,) = _rows(out.out)
    assert float(row["log_p"]) == 0.0


def test_transition_preset_row(capsys):
    code, out = _main(["asym", "transition"], capsys)
    assert code == 0
    (row,) = _rows(out.out)
    assert int(row["k"]) == 1
    assert float(row["x"]) == pytest.approx(-0.0354530842, abs=1e-9)
    assert float(row["exponent"]) == pytest.approx(7.706, abs=1e-3)


def test_csv_format_is_lf_and_round_trips(capsys):
    code, out = _main(["asym", "one-gap", "--s", "8"], capsys)
    assert code == 0
    assert "\r" not in out.out and out.out.endswith("\n")
    (row,) = _rows(out.out)
    total = float(row["total"])
    from gapscale.asym import one_gap_asymptotic

    assert total == one_gap_asymptotic(8.0, -1.0, 1.0).total  # 17 significant digits round-trip


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["verify", "diffid", "--out"]
    assert main(argv + [str(a)]) == 0
    assert main(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_adds_column(capsys):
    code, out = _main(["asym", "one-gap", "--s", "2", "--timing"], capsys)
    assert code == 0 and "wall_time" in _rows(out.out)[0]


def test_json_output_has_dictionary(capsys):
    code, out = _main(["asym", "two-gap", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out.out)
    assert set(doc["columns"]) == set(doc["rows"][0])
    assert all(doc["columns"][c] for c in doc["columns"])


def test_verify_exit_codes(capsys):
    assert _main(["verify", "diffid"], capsys)[0] == 0
    assert _main(["verify", "cdual"], capsys)[0] == 0
    # the two transition decompositions disagree at O((gamma nu)^2) > 1e-9
    code, out = _main(["verify", "continuity"], capsys)
    assert code == 2
    assert all(r["pass"] == "0" for r in _rows(out.out))


def test_errors_exit_one(capsys, tmp_path):
    assert _main(["fredholm", "--s", "-1"], capsys)[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["fredholm", "--bogus", "1"])
    assert exc.value.code == 1
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "fredholm", "parameters": {"s": 1.0}, "extra": 1}))
    assert _main(["fredholm", "--config", str(cfg)], capsys)[0] == 1
    cfg.write_text("{not json")
    assert _main(["fredholm", "--config", str(cfg)], capsys)[0] == 1


def test_config_flags_override(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "asym-one-gap", "parameters": {"s": 2.0, "beta": 0.5}}))
    code, out = _main(["asym", "one-gap", "--config", str(cfg), "--s", "3"], capsys)
    assert code == 0
    (row,) = _rows(out.out)
    assert float(row["s"]) == 3.0 and float(row["beta"]) == 0.5
    assert _main(["asym", "one-arc", "--config", str(cfg)], capsys)[0] == 1


def test_sweep_keeps_order(monkeypatch):
    monkeypatch.setenv("GAPSCALE_THREADS", "2")
    vals = [12.0, 4.0, 8.0]
    rows = sweep(Scenario("verify-one-gap", {}), "s", vals)
    assert [r["s"] for r in rows] == vals
    serial = [run(Scenario("verify-one-gap", {"s": v}))[0] for v in vals]
    assert rows == serial


def test_sweep_cli_and_empty(capsys, monkeypatch):
    monkeypatch.setenv("GAPSCALE_THREADS", "1")
    code, out = _main(["sweep", "--kind", "asym-one-gap", "--axis", "s", "--values", "1,2,3"], capsys)
    assert code == 0 and [float(r["s"]) for r in _rows(out.out)] == [1.0, 2.0, 3.0]
    code, out = _main(["sweep", "--kind", "asym-one-gap", "--axis", "s", "--values", ""], capsys)
    assert code == 0 and out.out == "kind,s,alpha,beta\n"
    assert _main(["sweep", "--kind", "asym-one-gap", "--axis", "variant", "--values", "1"], capsys)[0] == 1


def test_thread_count(monkeypatch):
    monkeypatch.setenv("GAPSCALE_THREADS", "3")
    assert cli.thread_count() == 3
    for bad in ("0", "x"):
        monkeypatch.setenv("GAPSCALE_THREADS", bad)
        with pytest.raises(ConfigError):
            cli.thread_count()


def test_columns_command(capsys):
    code, out = _main(["columns"], capsys)
    assert code == 0
    assert {r["column"] for r in _rows(out.out)} == set(DATA_DICTIONARY)


def test_console_script_module():
    proc = subprocess.run(
        [sys.executable, "-m", "gapscale.cli", "asym", "one-gap", "--s", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("kind,")
