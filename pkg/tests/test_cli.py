import re

import pytest

from conftest import FIGURES
from rotagroup.cli import main
from rotagroup.figure import load_figure
from rotagroup.solver import Arrangement, apply_word, format_state
from rotagroup.word import parse_word


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


def test_verify_theorem_2x3(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--figure", str(FIGURES / "2x3.fig"))
    assert code == 0
    assert out.splitlines()[0] == "predicted PGL2(5); order 120 = expected; PASS"
    assert "PGL2(5) oracle" in out


def test_verify_theorem_kv_keys_stable(capsys):
    keys = []
    for name in ("4x5", "3x5"):
        code, out, _ = run(capsys, "verify-theorem", "--figure", str(FIGURES / f"{name}.fig"), "--format", "kv")
        assert code == 0
        d = kv(out)
        assert d["passed"] == "true" and d["failures"] == "0"
        keys.append({k for k in d if not k.startswith("check.")})
    assert keys[0] == keys[1]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--figure", str(FIGURES / "5x6.fig"), "--format", "kv")
    d = kv(out)
    assert code == 0 and d["predicted"] == "EvenProduct" and d["m"] == "15"


def test_verify_lemma3_k7(capsys):
    code, out, _ = run(capsys, "verify-lemma3", "--k", "7")
    assert code == 0
    assert out.startswith("k=7: alpha=3, beta=1560, 3-cycle on E: PASS; mirrored on E^c: PASS")


def test_verify_lemma3_small_and_range(capsys):
    code, out, _ = run(capsys, "verify-lemma3", "--k-range", "2..6", "--format", "kv")
    d = kv(out)
    assert code == 0 and d["failures"] == "0"
    assert d["k4.status"] == "pass" and d["k5.beta"] == "120"
    assert d["k3-3x5.status"] == "pass"


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify-identities", "--k", "9", "--format", "kv")
    d = kv(out)
    assert code == 0 and d["k9.failed"] == "0" and int(d["k9.checked"]) > 10


def test_orbits_3x4(capsys):
    code, out, _ = run(capsys, "orbits", "--figure", str(FIGURES / "3x4.fig"))
    assert code == 0
    assert "2 orbit(s) of sizes 6, 6" in out
    assert out.count("parity (-1,-1)") == 2


def test_render(capsys):
    code, out, _ = run(capsys, "render", "--figure", str(FIGURES / "3x3-minus-corner.fig"))
    assert code == 0
    assert out.startswith("###\n###\n.##\n")


def test_solve_round_trip(capsys, tmp_path):
    fig = FIGURES / "4x5.fig"
    f = load_figure(fig)
    a = apply_word(f, Arrangement.solved(f.n), parse_word("s1^1 s2^3 s1^2 s2^1 s1^1"))
    state = tmp_path / "s.state"
    state.write_text(format_state(a))
    code, out, _ = run(capsys, "solve", "--figure", str(fig), "--state", str(state), "--format", "kv")
    d = kv(out)
    assert code == 0 and d["verified"] == "true"
    assert re.fullmatch(r"(s\d+\^[123] ?)+", d["word"])
    assert apply_word(f, a, parse_word(d["word"])).is_solved()


def test_solve_unsolvable(capsys, tmp_path):
    state = tmp_path / "s.state"
    state.write_text("perm\n2 1 " + " ".join(str(i) for i in range(3, 21)) + "\n")
    code, out, err = run(capsys, "solve", "--figure", str(FIGURES / "4x5.fig"), "--state", str(state))
    assert code == 1
    assert "parity-violation" in out and "FAIL" in err


def test_bad_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit):
        main(["verify-lemma3"])


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify", "--figure", "/nonexistent.fig")
    assert code == 2 and "error" in err


def test_bad_range(capsys):
    code, _, err = run(capsys, "verify-lemma3", "--k-range", "5-9")
    assert code == 2


def test_inadmissible_figure(capsys, tmp_path):
    p = tmp_path / "bad.fig"
    p.write_text("k=3\nrect 1 1 H\nrect 4 4 H\n")
    code, _, err = run(capsys, "classify", "--figure", str(p))
    assert code == 2 and "placement 1" in err


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("ROTAGROUP_SEED", "5")
    code, out, _ = run(capsys, "verify-theorem", "--figure", str(FIGURES / "5x6.fig"))
    assert code == 0
