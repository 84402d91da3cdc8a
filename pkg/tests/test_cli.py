import json

import pytest

from semicarnot import presentation
from semicarnot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_decide_engel2(capsys):
    assert run(capsys, "decide", "engel2") == (0, "NOT_SEMIGENERATED; certificate: Engel quotient (ideal = 0, n = 2)", "")


def test_validate_bad_jacobi(capsys):
    code, out, err = run(capsys, "validate", "bad-jacobi")
    assert code == 1 and err == "JacobiViolation(e1,e2,e3)"


def test_saturate_engel1(capsys):
    code, out, _ = run(capsys, "saturate", "engel1", "--lambda", "0,1")
    assert code == 0 and out == "E ⊇ {X, T, Z}; V3 ⊆ E ⇒ half-space semigenerating"


def test_inconclusive_saturation_exits_two(capsys):
    code, out, _ = run(capsys, "saturate", "free23", "--lambda", "1,0")
    assert code == 2 and out.endswith("no conclusion from saturation")


def test_diamond_certificate_sources(capsys):
    assert run(capsys, "decide", "137A", "--cert", "/nonexistent")[0] == 1
    code, out, _ = run(capsys, "diamond", str(presentation.CORPUS_DIR / "137A.json"))
    assert code == 0 and out.startswith("YES")


def test_decide_json_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "decide", "n626", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "SEMIGENERATED" and doc["certificate"]["kind"] == "engel_search"
    path = tmp_path / "d.json"
    path.write_text(out)
    assert run(capsys, "verify", "n626", str(path))[:2] == (0, "VALID")
    doc["verdict"] = "NOT_SEMIGENERATED"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "n626", str(path))
    assert code == 1 and out.startswith("INVALID")


@pytest.mark.parametrize(
    "argv",
    [
        ["decide", "engel2", "--bogus"],
        ["decide", "engel2", "--lambda", "1,x,0"],
        ["decide", "engel2", "--lambda", "1,0"],
        ["saturate", "engel2"],
        ["info", "missing.json"],
        [],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_malformed_file_diagnostic(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"layers": [2, 1], "basis": ["a", "b", "c"], "brackets": [{"left": "a", "right": "b", "result": {"c": "1.5"}}]}')
    code, _, err = run(capsys, "validate", str(p))
    assert code == 1 and "brackets[0].result.c: bad rational" in err


def test_free_and_engel_emit_presentations(capsys):
    code, out, _ = run(capsys, "free", "--rank", "2", "--step", "3")
    g = presentation.loads(out)
    assert code == 0 and g.layer_dims == (2, 1, 2) and "[X1,[X1,X2]]" in g.names
    code, out, _ = run(capsys, "engel", "--n", "3")
    assert presentation.loads(out).layer_dims == (4, 3, 1)


def test_info_recognize_star_quotients_abnormal(capsys):
    assert "trimmed: yes" in run(capsys, "info", "137A")[1]
    assert run(capsys, "recognize", "engel2")[1].startswith("ENGEL n=2")
    assert "step 3" in run(capsys, "recognize", "n626")[1]
    code, out, _ = run(capsys, "star", "n626")
    assert code == 0 and out.startswith("NO; witness: radical chain forces a1 = 0")
    code, out, _ = run(capsys, "quotients", "free23", "--json")
    assert code == 0 and json.loads(out)["exhaustive"]
    assert run(capsys, "abnormal", "engel2", "--nu", "1,1,0")[1] == "NON-ABNORMAL"
    assert run(capsys, "abnormal", "engel2", "--nu", "0,1,0")[1] == "ABNORMAL"


def test_simulate_deterministic_across_workers(capsys):
    a = run(capsys, "simulate", "engel1", "--lambda", "1,0", "--count", "200", "--json")[1]
    b = run(capsys, "simulate", "engel1", "--lambda", "1,0", "--count", "200", "--json", "--workers", "4")[1]
    assert a == b
    assert json.loads(a)["summary"]["observed"]["negative"] == 0
