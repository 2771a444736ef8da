import json
import shutil
import subprocess
import sys

import pytest

from flagsieve.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    return code, json.loads(out)


def test_sieve_rk(capsys):
    code, data = call_json(capsys, "sieve", "rk", "13", "2")
    assert code == 0 and len(data) == 2
    assert [(c["r"], c["k"], c["b"]) for c in data] == [(12, 3, 52), (8, 4, 26)]


def test_sieve_rk_filters(capsys):
    _, data = call_json(capsys, "sieve", "rk", "28", "2", "--subdegrees", "12,15")
    assert data and {c["eliminated_by"] for c in data} == {"subdegrees"}
    _, data = call_json(capsys, "sieve", "rk", "13", "2", "--stab", "39")
    assert [c["status"] for c in data] == ["fail", "fail"]  # gcd(24, 39) = 3


def test_sieve_table3(capsys):
    _, data = call_json(capsys, "sieve", "table3")
    assert [(d["q"], d["v"], d["R"]) for d in data][1] == (3, 144, 26)
    assert len(data) == 9
    code, out, _ = call(capsys, "--format", "text", "sieve", "table3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "q v R" and lines[-1] == "32 346390528 6342"


def test_sieve_imprimitive_and_bounds(capsys):
    _, data = call_json(capsys, "sieve", "imprimitive")
    assert [d["x"] for d in data] == [4, 6, 10, 22]
    _, data = call_json(capsys, "sieve", "bounds", "3", "11", "168")
    assert data["order_bound_holds"] is False
    code, _, err = call(capsys, "sieve", "bounds", "3", "12", "168")
    assert code == 2 and "prime power" in err


def test_json_is_sorted_and_deterministic(capsys):
    _, out1, _ = call(capsys, "replicate", "sp42-subdegrees")
    _, out2, _ = call(capsys, "replicate", "sp42-subdegrees")
    assert out1 == out2
    assert out1 == json.dumps(json.loads(out1), sort_keys=True, indent=2) + "\n"
    assert "." not in "".join(ch for ch in out1 if not ch.isalpha())


@pytest.mark.parametrize(
    "build",
    [
        ["construct", "fano-complement"],
        ["construct", "biplane16"],
        ["construct", "pg-design", "3", "3"],
        ["construct", "pg-design", "3", "3", "--derived"],
        ["construct", "pg-design", "4", "3", "--derived"],
        ["construct", "pg-design", "3", "4"],
    ],
)
def test_construct_verify_roundtrip(capsys, tmp_path, build):
    out = tmp_path / "d.txt"
    code, data = call_json(capsys, *build, "-o", str(out))
    assert code == 0 and data["design"] == str(out)
    code, verdict = call_json(capsys, "verify", "design", str(out))
    assert code == 0 and verdict["verified"] and verdict == {**data["params"], "verified": True}
    code, verdict = call_json(capsys, "verify", "flag-transitive", str(out), data["group"])
    assert code == 0 and verdict["flag_transitive"]


def test_verify_fano(capsys, tmp_path):
    out = tmp_path / "fano_complement.txt"
    call(capsys, "construct", "fano-complement", "-o", str(out))
    code, data = call_json(capsys, "verify", "design", str(out))
    assert code == 0 and data["lambda"] == 2 and data["symmetric"] is True
    code, data = call_json(capsys, "verify", "primitive", str(tmp_path / "fano_complement.group.txt"))
    assert code == 0 and data["primitive"]


def test_derived_from_file(capsys, tmp_path):
    lines = tmp_path / "pg.txt"
    call(capsys, "construct", "pg-design", "3", "3", "-o", str(lines))
    out = tmp_path / "der.txt"
    code, data = call_json(capsys, "construct", "derived", str(lines), "--group", str(tmp_path / "pg.group.txt"), "-o", str(out))
    assert code == 0 and data["params"]["b"] == 52
    code, _ = call_json(capsys, "verify", "flag-transitive", str(out), data["group"])
    assert code == 0


def test_construct_to_stdout(capsys):
    code, out, _ = call(capsys, "construct", "fano-complement")
    assert code == 0 and out.startswith("v 7\n") and len(out.splitlines()) == 8


def test_verification_failures_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("v 4\n0 1\n2 3\n")
    code, data = call_json(capsys, "verify", "design", str(bad))
    assert code == 1 and not data["verified"] and "pair" in data["reason"]
    call(capsys, "construct", "biplane16", "-o", str(tmp_path / "bp.txt"))
    code, data = call_json(capsys, "verify", "primitive", str(tmp_path / "bp.group.txt"))
    assert code == 1 and not data["primitive"] and len(data["block_system"]) == 4
    ident = tmp_path / "id.txt"
    ident.write_text("degree 16\n")
    code, data = call_json(capsys, "verify", "flag-transitive", str(tmp_path / "bp.txt"), str(ident))
    assert code == 1 and not data["flag_transitive"]
    swap = tmp_path / "swap.txt"
    swap.write_text("degree 16\n1 0 " + " ".join(map(str, range(2, 16))) + "\n")
    code, data = call_json(capsys, "verify", "flag-transitive", str(tmp_path / "bp.txt"), str(swap))
    assert code == 1 and "automorphism" in data["reason"]


def test_usage_errors_exit_2(capsys, tmp_path):
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys)[0] == 2
    assert call(capsys, "sieve", "rk", "x", "2")[0] == 2
    assert call(capsys, "replicate", "nope")[0] == 2
    assert call(capsys, "--jobs", "0", "sieve", "table3")[0] == 2
    assert call(capsys, "verify", "design", str(tmp_path / "missing.txt"))[0] == 2
    assert call(capsys, "construct", "pg-design", "2", "3")[0] == 2


def test_malformed_file_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("v 5\n0 1\n# fine\n0 x\n")
    code, _, err = call(capsys, "verify", "design", str(bad))
    assert code == 2 and f"{bad}:4:" in err
    grp = tmp_path / "g.txt"
    grp.write_text("degree 3\n0 1\n")
    code, _, err = call(capsys, "verify", "primitive", str(grp))
    assert code == 2 and f"{grp}:2:" in err


def test_group_degree_mismatch(capsys, tmp_path):
    call(capsys, "construct", "fano-complement", "-o", str(tmp_path / "f.txt"))
    g = tmp_path / "g.txt"
    g.write_text("degree 8\n")
    assert call(capsys, "verify", "flag-transitive", str(tmp_path / "f.txt"), str(g))[0] == 2


def test_replicate_all(capsys):
    code, data = call_json(capsys, "--jobs", "2", "replicate", "all")
    assert code == 0 and all(r["match"] for r in data["reports"])
    assert [r["claim"] for r in data["reports"]] == ["psl34-orbits", "sp42-subdegrees", "psl32-block-search", "biplane16"]
    assert data["unreplicated"][0]["claim"] == "psl33-144-points"
    assert "wall_time_ms" not in data["reports"][0]


def test_replicate_timing_and_text(capsys):
    code, data = call_json(capsys, "replicate", "psl34-orbits", "--timing")
    assert code == 0 and "wall_time_ms" in data["reports"][0]
    code, out, _ = call(capsys, "replicate", "psl34-orbits", "--format", "text")
    assert code == 0 and "match: true" in out


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("FLAGSIEVE_ORBIT_BUDGET", "10")
    code, _, err = call(capsys, "replicate", "psl32-block-search")
    assert code == 2 and "FLAGSIEVE_ORBIT_BUDGET" in err


def test_console_script(tmp_path):
    exe = shutil.which("flagsieve")
    cmd = [exe] if exe else [sys.executable, "-m", "flagsieve.cli"]
    res = subprocess.run(cmd + ["sieve", "rk", "7", "2"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and len(json.loads(res.stdout)) == 2
