import json
import subprocess
import sys

import pytest

from arithtype.cli import main


@pytest.fixture
def specs(tmp_path):
    files = {
        "zeta": "ratios.tail: affine 1, 1\nmultipliers: full\n",
        "two": "ratios.tail: constant 2\nmultipliers: base\n",
        "g6": "ratios.tail: constant 6\nmultipliers: gap-third\n",
        "zb": "ratios.tail: affine 1, 1\nmultipliers: base\n",
        "bad": "ratios.prefix: 2\nratios.tail: constant 3\nmultipliers: explicit\n2: 1, 3\n",
    }
    out = {}
    for name, text in files.items():
        p = tmp_path / f"{name}.spec"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("spec,count,expected", [
    ("zeta", 7, "1 2 4 6 12 18 24"),
    ("two", 4, "1 2 4 8"),
    ("g6", 5, "1 3 4 5 6"),
])
def test_gen(capsys, specs, spec, count, expected):
    code, out, _ = run(capsys, "gen", "--spec", specs[spec], "--count", str(count))
    assert code == 0 and out.split() == expected.split()


def test_gen_parse_error(capsys, specs):
    code, _, err = run(capsys, "gen", "--spec", specs["bad"], "--count", "3")
    assert code == 2 and "line 4" in err


def test_digits(capsys, specs):
    code, out, _ = run(capsys, "digits", "1/3", "--spec", specs["two"], "-N", "6", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["window"] == [0, 1, 0, 1, 0, 1] and report["tail"] == "periodic 0,1"
    _, out, _ = run(capsys, "digits", "1/2", "--spec", specs["two"], "-N", "4")
    assert "digits: 1,0,0,0" in out and "tail: zero" in out


def test_member(capsys, specs):
    _, out, _ = run(capsys, "member", "7/9973", "--spec", specs["zeta"], "--format", "json")
    r = json.loads(out)
    assert r["status"] == "member" and r["certificate"]["kind"] == "finite-support"
    _, out, _ = run(capsys, "member", "1/3", "--spec", specs["two"], "--format", "json")
    r = json.loads(out)
    assert r["status"] == "non-member" and r["witness"]["norm"] == "1/3"
    _, out, _ = run(capsys, "member", "0", "--spec", specs["two"])
    assert "verdict: member" in out


def test_conditions(capsys, specs, tmp_path):
    code, out, _ = run(capsys, "conditions", "1/3", "--spec", specs["two"], "--set", "every:2", "--horizon", "100",
                       "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["sets"][0]["status"] == "violated"
    code, out, _ = run(capsys, "conditions", "5/8", "--spec", specs["two"])
    assert "member regardless" in out
    digits = tmp_path / "x.digits"
    digits.write_text("digits: 0,1\ntail: periodic 0,1\n")
    code, out, _ = run(capsys, "conditions", str(digits), "--spec", specs["two"], "--tolerance", "1/10")
    assert code == 0 and "set supp" in out
    code, _, err = run(capsys, "conditions", "1/3", "--spec", specs["two"], "--tolerance", "abc")
    assert code == 2 and "tolerance" in err


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "3", "100", "--format", "json")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row == {"case": "1a", "t": 6, "r": 94, "bound": "3/40", "attained": "9/50", "holds": True}
    code, _, err = run(capsys, "certify", "50", "100")
    assert code == 2 and "outside" in err
    code, out, _ = run(capsys, "certify", "--sweep", "120")
    assert code == 0 and "2b" in out


def test_verify_and_determinism(capsys):
    code, out, _ = run(capsys, "verify", "lemma22", "--seed", "7", "--scale", "1000")
    assert code == 0 and "1000/1000" in out and "PASS" in out
    _, a, _ = run(capsys, "verify", "tailbound", "--seed", "3", "--scale", "50", "--format", "json")
    _, b, _ = run(capsys, "verify", "tailbound", "--seed", "3", "--scale", "50", "--format", "json")
    assert a == b
    report = json.loads(a)
    assert report["version"] == 1 and report["ok"] is True


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from arithtype import verify

    def broken(seed, scale):
        return [verify.Check("always", verify.FAIL, "0/1")]

    monkeypatch.setitem(verify.SUITES, "lemma22", broken)
    code, out, _ = run(capsys, "verify", "lemma22", "--seed", "4")
    assert code == 1 and "reproduce: arithtype verify lemma22 --seed 4" in out


def test_console_entry_point(specs):
    res = subprocess.run([sys.executable, "-m", "arithtype.cli", "gen", "--spec", specs["zeta"], "--count", "3"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["1", "2", "4"]


def test_witness(capsys, tmp_path, specs):
    # digit 1 on odd indices from 3 on: sparse enough for the base schedule, but q/2 multipliers break it
    digits = tmp_path / "w.digits"
    digits.write_text("digits: 0\ntail: periodic 0,1\n")
    code, out, _ = run(capsys, "witness", str(digits), "--spec", specs["zb"], "--horizon", "400", "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["sufficient"] == "confirmed"
    assert r["digits"][:6] == [0, 0, 1, 0, 1, 0]
    _, out, _ = run(capsys, "witness", str(digits), "--spec", specs["zeta"], "--horizon", "400", "--format", "json")
    assert json.loads(out)["sufficient"] == "refuted"
