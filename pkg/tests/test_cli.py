from __future__ import annotations

import json
import subprocess
import sys

import pytest

from unstable_resolution.cache import Workspace, checksum, code_version, entry_key
from unstable_resolution.cli import SCHEMA, main, run


def test_cache_round_trip(tmp_path):
    ws = Workspace(tmp_path)
    key = entry_key("demo", 2, "L", 8)
    calls = []

    def compute():
        calls.append(1)
        return {"b": (1, 2), "a": "x"}

    first, hit1 = ws.get_or_compute(key, compute)
    second, hit2 = ws.get_or_compute(key, compute)
    assert (hit1, hit2) == (False, True)
    assert first == second == {"b": [1, 2], "a": "x"}
    assert list(second) == ["b", "a"]
    assert len(calls) == 1


def test_cache_version_mismatch_is_a_miss(tmp_path):
    ws = Workspace(tmp_path)
    old = entry_key("demo", 2, None, 8, version="0000")
    ws.store(old, {"v": 1})
    new = entry_key("demo", 2, None, 8)
    assert new["version"] == code_version() != "0000"
    assert ws.load(new) is None
    assert ws.load(old) == {"v": 1}


def test_cache_bad_checksum_is_recomputed(tmp_path):
    ws = Workspace(tmp_path)
    key = entry_key("demo", 1, None, 4)
    path = ws.store(key, {"v": 1})
    entry = json.loads(path.read_text())
    entry["payload"]["v"] = 2
    path.write_text(json.dumps(entry))
    assert entry["checksum"] != checksum(entry["payload"])
    payload, hit = ws.get_or_compute(key, lambda: {"v": 3})
    assert (payload, hit) == ({"v": 3}, False)
    path.write_text("{not json")
    assert ws.load(key) is None and not path.exists()


def test_idempotent_command_passes(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, report = run(["idempotent", "--n", "2", "--json", str(out)])
    assert code == 0 and report["pass"]
    assert report["schema"] == SCHEMA
    assert json.loads(out.read_text()) == report
    assert "PASS  hecke_idempotent" in capsys.readouterr().out


def test_reports_are_identical_fresh_cached_and_threaded(tmp_path):
    ws = str(tmp_path / "ws")
    argv = ["resolution", "--n", "2", "--cap", "12"]
    _, fresh = run(argv)
    _, stored = run(argv + ["--workspace", ws])
    _, cached = run(argv + ["--workspace", ws, "--threads", "3"])
    _, threaded = run(argv + ["--threads", "3"])
    dump = lambda r: json.dumps(r, ensure_ascii=False)
    assert dump(fresh) == dump(stored) == dump(cached) == dump(threaded)
    assert fresh["pass"]


@pytest.mark.parametrize("argv", [
    ["basis", "--n", "2", "--flavor", "M", "--cap", "12"],
    ["basis", "--n", "2", "--flavor", "dickson", "--power", "1", "--cap", "20"],
    ["basis", "--n", "3", "--flavor", "J"],
    ["presentation", "--n", "2"],
    ["takayasu", "--n", "2", "--cap", "12"],
    ["series", "--which", "mu", "--n", "3", "--cap", "20"],
    ["series", "--which", "tseries", "--n", "3", "--cap", "40"],
])
def test_commands_exit_zero(argv):
    assert main(argv) == 0


def test_out_of_range_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["presentation", "--n", "5"])
    assert exc.value.code == 2
    assert "presentation requires 1 ≤ n ≤ 4 (got n = 5)" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["resolution", "--n", "3", "--cap", "30"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["basis", "--flavor", "nope"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unstable_resolution", "series", "--which", "ell",
                           "--n", "2", "--cap", "16"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "FAIL" not in proc.stdout
