"""CLI verbs, both through main() and one real subprocess pipe."""

import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from pdacache import parse, validate
from pdacache.analysis import read_csv
from pdacache.cli import main

from common import SIX_BY_SIX_REDUCED_TEXT, SIX_BY_SIX_TEXT


def _kv(out):
    return dict(line.split("=", 1) for line in out.strip().splitlines())


@pytest.fixture
def six_file(tmp_path):
    p = tmp_path / "six.pda"
    p.write_text(SIX_BY_SIX_TEXT)
    return str(p)


def test_construct_mn_stdout(capsys):
    assert main(["construct", "--family", "mn", "--K", "2", "--t", "1"]) == 0
    assert capsys.readouterr().out == "2 2\n* 0\n0 *\n"


def test_construct_rule1_to_file(tmp_path):
    out = tmp_path / "a.pda"
    rc = main(["construct", "--family", "rule1", "--H", "4", "--r", "2",
               "--b", "2", "--lambda", "1", "--out", str(out)])
    assert rc == 0
    params = validate(parse(out.read_text()))
    assert (params.K, params.F, params.Z, params.S) == (6, 6, 2, 12)


def test_construct_missing_args(capsys):
    assert main(["construct", "--family", "mn"]) == 1
    assert "error=" in capsys.readouterr().err


def test_validate_kv(six_file, capsys):
    assert main(["validate", "--in", six_file]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv == {"K": "6", "F": "6", "Z": "2", "S": "12",
                  "gain_profile": ",".join(["2"] * 12)}


def test_validate_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(SIX_BY_SIX_TEXT))
    assert main(["validate"]) == 0
    assert "K=6" in capsys.readouterr().out


def test_validate_rejects_bad_array(tmp_path, capsys):
    p = tmp_path / "bad.pda"
    p.write_text("1 2\n0 0\n")
    assert main(["validate", "--in", str(p)]) == 1
    assert "error=" in capsys.readouterr().err


def test_classify_json(six_file, capsys):
    assert main(["classify", "--in", six_file, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["useful"] == 6 and doc["useless"] == 6
    assert doc["per_column_useless"] == [1] * 6
    assert "(0;5)" in doc["useless_positions"]


def test_reduce_to_file(six_file, tmp_path, capsys):
    out = tmp_path / "r.pda"
    assert main(["reduce", "--in", six_file, "--out", str(out)]) == 0
    assert parse(out.read_text()).grid == parse(SIX_BY_SIX_REDUCED_TEXT).grid
    cap = capsys.readouterr()
    assert "zprime=1" in cap.out and cap.err == ""


def test_reduce_to_stdout_keeps_pipe_clean(six_file, capsys):
    assert main(["reduce", "--in", six_file]) == 0
    cap = capsys.readouterr()
    assert parse(cap.out).grid == parse(SIX_BY_SIX_REDUCED_TEXT).grid
    assert "zprime=1" in cap.err


def test_params_kv(capsys):
    rc = main(["params", "--scheme", "new1", "--H", "4", "--r", "2",
               "--b", "2", "--lambda", "1"])
    assert rc == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["memory_ratio"] == "1/5"
    assert kv["rate"] == "12/5"
    assert kv["subpacketization"] == "5"


def test_params_gate_error(capsys):
    rc = main(["params", "--scheme", "original", "--H", "4", "--r", "2",
               "--b", "3", "--lambda", "1", "--format", "json"])
    assert rc == 1
    assert "error" in json.loads(capsys.readouterr().err)


def test_simulate_uncoded(six_file, capsys):
    assert main(["simulate", "--in", six_file, "--mode", "uncoded",
                 "--file-len", "60"]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["ok"] == "true"
    assert kv["rate"] == "2/1"
    assert kv["memory_ratio"] == "1/3"
    assert kv["bytes_sent"] == "120"


def test_simulate_coded_json(tmp_path, capsys):
    p = tmp_path / "red.pda"
    p.write_text(SIX_BY_SIX_REDUCED_TEXT)
    rc = main(["simulate", "--in", str(p), "--mode", "coded",
               "--request", "5,4,3,2,1,0", "--format", "json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True
    assert doc["rate"] == "12/5"
    assert doc["memory_ratio"] == "1/5"


def test_simulate_deterministic(six_file, capsys):
    main(["simulate", "--in", six_file, "--mode", "uncoded", "--seed", "7"])
    first = capsys.readouterr().out
    main(["simulate", "--in", six_file, "--mode", "uncoded", "--seed", "7"])
    assert capsys.readouterr().out == first


def test_simulate_needs_enough_files(six_file, capsys):
    rc = main(["simulate", "--in", six_file, "--mode", "uncoded", "--N", "3"])
    assert rc == 1
    assert "N >= K" in capsys.readouterr().err


def test_simulate_files_dir(tmp_path, capsys):
    d = tmp_path / "lib"
    d.mkdir()
    for i in range(6):
        (d / f"f{i}.bin").write_bytes(bytes([i]) * 30)
    p = tmp_path / "six.pda"
    p.write_text(SIX_BY_SIX_TEXT)
    rc = main(["simulate", "--in", str(p), "--mode", "uncoded",
               "--files-dir", str(d)])
    assert rc == 0
    assert _kv(capsys.readouterr().out)["ok"] == "true"


def test_simulate_bad_request_list(six_file, capsys):
    assert main(["simulate", "--in", six_file, "--mode", "uncoded",
                 "--request", "0,1,2"]) == 1
    capsys.readouterr()


def test_sweep_csv_and_svg(tmp_path):
    csv_path = tmp_path / "s.csv"
    svg_path = tmp_path / "s.svg"
    rc = main(["sweep", "--H", "6", "--r", "2", "--csv", str(csv_path),
               "--svg", str(svg_path)])
    assert rc == 0
    with open(csv_path) as fh:
        records = read_csv(fh)
    assert {rec.scheme for rec in records} >= {"original", "new", "new_I",
                                               "new_II", "new_envelope"}
    ET.fromstring(svg_path.read_text())


def test_sweep_stdout(capsys):
    assert main(["sweep", "--H", "4", "--r", "2"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("scheme,H,r,b,lambda")


def test_missing_file_is_an_error(capsys):
    assert main(["validate", "--in", "/nonexistent/x.pda"]) == 1
    capsys.readouterr()


def test_bad_flags_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--mode", "sideways"])
    assert e.value.code == 2


def test_pipe_construct_reduce_simulate(tmp_path):
    cmd = (f"{sys.executable} -m pdacache.cli construct --family rule1"
           " --H 4 --r 2 --b 2 --lambda 1"
           f" | {sys.executable} -m pdacache.cli reduce"
           f" | {sys.executable} -m pdacache.cli simulate --mode coded"
           " --file-len 80")
    proc = subprocess.run(cmd, shell=True, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    kv = _kv(proc.stdout)
    assert kv["ok"] == "true" and kv["rate"] == "12/5"
    assert "zprime=1" in proc.stderr
