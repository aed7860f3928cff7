import json

import pytest

from qcalt import cli

KEYGEN = ["keygen", "--q", "2", "--m", "4", "--ell", "3", "--class", "diag", "--orbits", "5",
          "--divisor-weight", "1"]
KEYGEN64 = ["keygen", "--q", "2", "--m", "6", "--ell", "3", "--class", "diag", "--orbits", "15"]


def run(*args):
    return cli.main([str(a) for a in args])


@pytest.fixture
def keys(tmp_path):
    assert run(*KEYGEN, "--seed", 7, "--out", tmp_path / "k") == 0
    return tmp_path


def test_keygen_summary(tmp_path, capsys):
    assert run(*KEYGEN, "--seed", 7, "--out", tmp_path / "k") == 0
    assert "n=15" in capsys.readouterr().out
    assert (tmp_path / "k.pub").exists() and (tmp_path / "k.sec").exists()


def test_keygen_deterministic(tmp_path):
    run(*KEYGEN, "--seed", 3, "--out", tmp_path / "a")
    run(*KEYGEN, "--seed", 3, "--out", tmp_path / "b")
    for ext in (".pub", ".sec"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()


def test_keygen_bad_parameters(tmp_path, capsys):
    assert run(*KEYGEN[:5], "--ell", 7, "--class", "diag", "--orbits", 2, "--out", tmp_path / "x") == 2
    assert "error" in capsys.readouterr().err
    assert run("keygen", "--q", 6, "--m", 2, "--ell", 3, "--class", "diag", "--orbits", 1,
               "--out", tmp_path / "x") == 2
    assert run("keygen", "--bogus") == 2


def test_invariant_public_only(keys):
    assert run("invariant", keys / "k.pub", "--out", keys / "k") == 0
    assert (keys / "k.inv").exists() and not (keys / "k.secrets").exists()


def test_invariant_with_secret(keys, capsys):
    assert run("invariant", keys / "k.pub", "--secret", keys / "k.sec", "--out", keys / "k") == 0
    assert "structure check ok" in capsys.readouterr().out
    assert (keys / "k.secrets").read_text().startswith("qcalt-invariant 1")


def test_invariant_tampered_public(keys):
    pub = keys / "k.pub"
    lines = pub.read_text().splitlines()
    lines[5] = "1" + lines[5][1:] if lines[5][0] == "0" else "0" + lines[5][1:]
    pub.write_text("\n".join(lines) + "\n")
    assert run("invariant", pub, "--out", keys / "t") == 2
    pub.write_text("garbage\n")
    assert run("invariant", pub, "--out", keys / "t") == 2


def test_attack_and_verify(keys, capsys):
    run("invariant", keys / "k.pub", "--secret", keys / "k.sec", "--out", keys / "k")
    assert run("attack", keys / "k.pub", keys / "k.secrets", "--out", keys / "r", "--repeat", 10) == 0
    report = json.loads((keys / "r.report.json").read_text())
    assert report["outcome"] == "success" and report["repeat"] == 10
    assert set(report["timings_ms"]) == {"attack", "verify"}
    assert report["parameters"]["n"] == 15
    assert run("verify", keys / "k.pub", "--secret", keys / "k.sec", "--result", keys / "r.result") == 0
    assert report["certificate"] in capsys.readouterr().out


def test_verify_rejects_forged_result(keys):
    run("invariant", keys / "k.pub", "--secret", keys / "k.sec", "--out", keys / "k")
    run("attack", keys / "k.pub", keys / "k.secrets", "--out", keys / "r", "--repeat", 1)
    res = keys / "r.result"
    res.write_text(res.read_text().replace("divisor 1\n0:1 3", "divisor 1\n0:1 2"))
    assert run("verify", keys / "k.pub", "--result", res) == 4


def test_attack_cross_paired(tmp_path):
    for seed in (1, 2):
        run(*KEYGEN64, "--seed", seed, "--out", tmp_path / f"s{seed}")
    run("invariant", tmp_path / "s2.pub", "--secret", tmp_path / "s2.sec", "--out", tmp_path / "s2")
    code = run("attack", tmp_path / "s1.pub", tmp_path / "s2.secrets", "--out", tmp_path / "x", "--repeat", 1)
    assert code == 4
    assert json.loads((tmp_path / "x.report.json").read_text())["certificate"] is None


def test_attack_needs_secrets(keys):
    assert run("attack", keys / "k.pub", "--out", keys / "r") == 2
    assert run("attack", keys / "k.pub", keys / "nope", "--out", keys / "r") == 2


def test_attack_brute_force(tmp_path):
    run("keygen", "--q", 16, "--m", 1, "--ell", 3, "--class", "diag", "--orbits", 4, "--seed", 1,
        "--out", tmp_path / "b")
    assert run("attack", tmp_path / "b.pub", "--brute-force", "--out", tmp_path / "b", "--repeat", 1) == 0


def test_bench_table(capsys):
    assert run("bench", "--grid", "2,4,3,diag,5,1,fixed", "--repeat", 1) == 0
    out = capsys.readouterr().out
    rows = [ln for ln in out.splitlines() if ln.startswith("| 2 | 4 ")]
    assert len(rows) == 1
    assert "2 & 12 & 3600 & 2825 & 3 & 129 & 1659 s (≈ 27 min)" in out
    assert "not run at desk scale" in out and "not computed" in out


def test_bench_sorted(capsys):
    assert run("bench", "--grid", "2,4,5,diag,3,1,fixed", "--grid", "2,4,3,diag,5,1,fixed",
               "--grid", "2,4,2,trig,7,1", "--repeat", 1) == 0
    rows = [ln.split("|") for ln in capsys.readouterr().out.splitlines() if ln.startswith("| 2 | 4 ")]
    keys = [(int(r[5]), int(r[3])) for r in rows]
    assert keys == sorted(keys)


def test_bench_bad_grid():
    assert run("bench", "--grid", "2,4,3") == 2
