import sys
import os
import json

# Add src to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from leavitt_sym.constants import LOG_FILE
from leavitt_sym.history import log_run, show_history


def test_no_history(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    show_history()
    assert capsys.readouterr().out.strip() == "No history found."


def test_log_run_appends_jsonl(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    log_run("verify", ["verify", "et1", "2", "2"], 0, 1.234, "et1 2 2: 18 graphs", {"permutations_checked": 12})
    log_run("classify", ["classify", "c2.txt"], 2, 0.01)
    lines = (tmp_path / LOG_FILE).read_text().splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["command"] == "verify"
    assert first["exit_code"] == 0
    assert first["duration_seconds"] == 1.23
    assert first["budget"] == {"permutations_checked": 12}
    assert "budget" not in json.loads(lines[1])


def test_show_history_skips_corrupt_lines(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    log_run("classify", ["classify", "c2.txt"], 0, 0.5, "C2 Hinf+(2)")
    with open(tmp_path / LOG_FILE, "a") as f:
        f.write("not json\n")
    show_history()
    out = capsys.readouterr().out
    assert "Timestamp" in out and "Summary" in out
    assert "C2 Hinf+(2)" in out
    assert "not json" not in out
