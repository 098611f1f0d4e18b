import json
import subprocess
import sys

import pytest

from harmonia.cli import main, max_envelope_degree, resolve_checks
from harmonia.liealg import SO_EVEN, SU, Family
from harmonia.report import CHECKS


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def table_row(out, line=1):
    return [int(v) for v in out.splitlines()[line].split()[-4:]]


@pytest.mark.parametrize("family,n,row", [
    ("su", 2, [8, 4, 2, 2]),
    ("so-even", 2, [10, 6, 2, 2]),
    ("so-odd", 1, [6, 3, 2, 1]),
])
def test_dims(capsys, family, n, row):
    code, out = run(capsys, "dims", "--family", family, "--n", str(n))
    assert code == 0
    assert table_row(out.out) == row


@pytest.mark.parametrize("family,n,d,row", [
    ("su", 1, 3, [10, 8, 2, 2]),
    ("su", 2, 1, [8, 1, 7, 7]),
    ("su", 2, 0, [1, 0, 1, 1]),
])
def test_harmonics_table(capsys, family, n, d, row):
    code, out = run(capsys, "harmonics", "--family", family, "--n", str(n), "--degree", str(d))
    assert code == 0
    assert table_row(out.out) == row


def test_harmonics_emit_basis(capsys):
    code, out = run(capsys, "harmonics", "--family", "su", "--n", "1", "--degree", "2", "--emit-basis")
    assert code == 0
    assert sum(line.startswith("h") for line in out.out.splitlines()[2:]) == 2


def test_verify_single_stabilizer_report(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, _ = run(capsys, "verify", "--family", "su", "--n", "2", "--checks", "trivial-stabilizer",
                  "--json", str(path))
    assert code == 0
    manifest = json.loads(path.read_text())
    assert list(manifest) == ["version", "seed", "reports"]
    assert [r["id"] for r in manifest["reports"]] == ["trivial-stabilizer"]
    assert manifest["reports"][0]["status"] == "pass"
    assert list(manifest["reports"][0]) == ["id", "family", "n", "params", "expected", "computed", "status", "ms"]


def test_verify_so_odd1_all_pass(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out = run(capsys, "verify", "--family", "so-odd", "--n", "1", "--max-degree", "5", "--json", str(path))
    assert code == 0
    statuses = {r["id"]: r["status"] for r in json.loads(path.read_text())["reports"]}
    assert "fail" not in statuses.values()
    assert set(statuses) == set(CHECKS) - {"centralizer-structure"}


def test_manifest_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(capsys, "verify", "--family", "su", "--n", "1", "--max-degree", "4",
                   "--seed", "11", "--json", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert all(r["ms"] is None for r in json.loads(paths[0].read_text())["reports"])


def test_timings_are_opt_in(capsys, tmp_path):
    p = tmp_path / "t.json"
    run(capsys, "verify", "--family", "su", "--n", "1", "--checks", "dims", "--timings", "--json", str(p))
    assert json.loads(p.read_text())["reports"][0]["ms"] is not None


def test_envelope_refusal_writes_nothing(capsys, tmp_path):
    p = tmp_path / "m.json"
    code, out = run(capsys, "verify", "--family", "su", "--n", "3", "--json", str(p))
    assert code == 3
    assert "refusing" in out.err
    assert not p.exists()
    code, _ = run(capsys, "verify", "--family", "so-even", "--n", "2", "--max-degree", "5", "--json", str(p))
    assert code == 3 and not p.exists()
    assert run(capsys, "harmonics", "--family", "so-odd", "--n", "2", "--degree", "4")[0] == 3


def test_force_overrides_envelope(capsys):
    code, out = run(capsys, "verify", "--family", "su", "--n", "5", "--checks", "dims", "--force")
    assert code == 0
    assert "warning" in out.err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--family", "su", "--n", "0")[0] == 2
    assert run(capsys, "verify", "--family", "sp", "--n", "1")[0] == 2
    assert run(capsys, "verify", "--family", "su", "--n", "1", "--checks", "bogus")[0] == 2
    assert run(capsys, "verify", "--family", "su", "--n", "1", "--checks", "centralizer")[0] == 2
    assert run(capsys, "verify", "--family", "su", "--n", "1", "--max-degree", "-1")[0] == 2
    assert run(capsys, "harmonics", "--family", "su", "--n", "1", "--degree", "-2")[0] == 2
    assert run(capsys)[0] == 2


def test_resolve_checks_and_envelope_degree():
    assert resolve_checks("stabilizer,dims", Family(SU, 2)) == ["dimension-table", "trivial-stabilizer"]
    assert "centralizer-structure" in resolve_checks(None, Family(SO_EVEN, 2))
    assert "centralizer-structure" not in resolve_checks("all", Family(SU, 2))
    assert max_envelope_degree(Family(SU, 2)) == 5
    assert max_envelope_degree(Family(SO_EVEN, 2)) == 4


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "harmonia", "dims", "--family", "su", "--n", "1"],
                         capture_output=True, text=True, check=True)
    assert "degrees f:   2" in out.stdout


def test_failing_report_sets_exit_code(capsys, monkeypatch, tmp_path):
    import harmonia.cli as cli
    from harmonia.report import VerificationReport

    monkeypatch.setattr(cli, "check_dimension_table",
                        lambda fam: VerificationReport("dimension-table", fam.tag, fam.n, status="fail"))
    p = tmp_path / "m.json"
    code, out = run(capsys, "verify", "--family", "su", "--n", "1", "--checks", "dims", "--json", str(p))
    assert code == 1
    assert json.loads(p.read_text())["reports"][0]["status"] == "fail"
    assert out.out.startswith("FAIL")
