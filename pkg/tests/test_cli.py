"""Command-line behaviour: outputs, exit codes and state handling."""
import json
import subprocess
import sys

import pytest

from nickpay import errors
from nickpay.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def state(tmp_path):
    return tmp_path / "world.json"


def test_full_session(capsys, state):
    assert run(capsys, "--state", state, "--seed", 11, "setup")[0] == 0
    for u in ("alice", "bob"):
        assert run(capsys, "--state", state, "join", u)[0] == 0
    code, out, _ = run(capsys, "--state", state, "--json", "mint", "alice", 100)
    assert code == 0 and json.loads(out)["result"]["amount"] == 100
    code, out, _ = run(capsys, "--state", state, "--json", "transfer", "alice", "bob", 40)
    nk = json.loads(out)["result"]["nickname"]
    code, out, _ = run(capsys, "--state", state, "--json", "scan", "bob")
    res = json.loads(out)["result"]
    assert res["balance"] == 40 and [e["owned"] for e in res["events"]] == [False, True]
    code, out, _ = run(capsys, "--state", state, "audit", nk)
    assert code == 0 and "bob" in out and "ACCEPTED" in out
    code, out, _ = run(capsys, "--state", state, "--json", "open", nk)
    assert json.loads(out)["result"]["user_id"] == "bob"


def test_flags_after_subcommand(capsys, state):
    assert run(capsys, "setup", "--state", state, "--seed", 3)[0] == 0
    code, out, _ = run(capsys, "join", "alice", "--state", state, "--json")
    assert code == 0 and json.loads(out)["ok"]


def test_error_codes(capsys, state):
    run(capsys, "--state", state, "--seed", 1, "setup")
    code, _, err = run(capsys, "--state", state, "setup")
    assert code == errors.AlreadySetUp.code and "AlreadySetUp" in err
    run(capsys, "--state", state, "join", "alice")
    run(capsys, "--state", state, "join", "bob")
    code, _, _ = run(capsys, "--state", state, "join", "alice")
    assert code == errors.JoinRejected.code
    run(capsys, "--state", state, "mint", "alice", 10)
    code, out, _ = run(capsys, "--state", state, "--json", "transfer", "alice", "bob", 11)
    assert code == errors.InsufficientFunds.code == 18
    assert json.loads(out) == {"ok": False, "error": "InsufficientFunds", "code": 18,
                               "message": "balance 10 < 11"}
    code, _, _ = run(capsys, "--state", state, "scan", "zed")
    assert code == errors.NotAMember.code
    code, _, _ = run(capsys, "--state", state, "audit", "00" * 96)
    assert code == errors.MALFORMED_ENCODING


def test_missing_state_file(capsys, state):
    code, _, err = run(capsys, "--state", state, "join", "alice")
    assert code == errors.StateFileError.code and "setup" in err


def test_audit_random_not_found(capsys, state):
    from nickpay.ngs import Nickname
    from nickpay.pairing import G1Elem

    run(capsys, "--state", state, "--seed", 1, "setup")
    g = G1Elem.generator()
    nk = Nickname(g ** 2, g ** 3, g ** 5).hex()
    code, out, _ = run(capsys, "--state", state, "--json", "audit", nk)
    assert code == 0 and json.loads(out)["result"]["outcome"] == "NOT_FOUND"


def test_state_export_import(capsys, tmp_path, state):
    run(capsys, "--state", state, "--seed", 4, "setup")
    run(capsys, "--state", state, "join", "alice")
    exported = tmp_path / "copy.json"
    assert run(capsys, "--state", state, "state", "export", exported)[0] == 0
    assert exported.read_text() == state.read_text()
    other = tmp_path / "other.json"
    assert run(capsys, "--state", other, "state", "import", exported)[0] == 0
    assert other.read_text() == state.read_text()
    exported.write_text("garbage")
    code, _, _ = run(capsys, "--state", other, "state", "import", exported)
    assert code == errors.StateFileError.code
    assert other.read_text() == state.read_text()


def test_demo_json_deterministic(capsys):
    _, a, _ = run(capsys, "--json", "demo", "--seed", 42)
    _, b, _ = run(capsys, "demo", "--json", "--seed", 42, "--split-at", 7)
    assert a == b
    lines = [json.loads(x) for x in a.splitlines()]
    assert lines[0]["op"] == "setup" and lines[-1]["verdict"] == "ACCEPTED"


def test_demo_human_output(capsys):
    code, out, _ = run(capsys, "demo")
    assert code == 0 and "ACCEPTED" in out and "carol" in out


def test_bench_writes_report(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "bench", "--iterations", 5, "--out", tmp_path / "rep")
    res = json.loads(out)["result"]
    assert code == 0 and res["pairings"] == {"gvf": 3, "uvf": 0}
    for kind in ("json", "csv", "png"):
        assert (tmp_path / "rep" / f"bench.{kind}").stat().st_size > 0
    assert (tmp_path / "rep" / "bench.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_invalid_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["mint", "alice", "-5"])
    assert ei.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "nickpay", "--json", "demo"], capture_output=True,
                          text=True, cwd=tmp_path, timeout=300)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["op"] == "audit"
