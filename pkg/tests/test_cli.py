import json
import subprocess
import sys
from pathlib import Path

import pytest

from fgrade_kernel.cli import runner
from fgrade_kernel.cli.main import main
from fgrade_kernel.cli.parser import ParseError, parse_ideal, parse_matrix, parse_session
from fgrade_kernel.cli.runner import RunOptions, dumps, run, run_text
from fgrade_kernel.filtergrade import FGradeReport
from fgrade_kernel.groebner import Ideal

ROOT = Path(__file__).resolve().parents[1]
SCRIPT = ROOT / "scripts" / "reference_example.alg"

PREAMBLE = """
ring R = QQ[x,y,z];
ideal m = (x, y, z);
ideal b = (x*y);
list xs = (x, y);
module F = free(1);
module M = free(1) ++ cyclic(y^2, z^3);
module T = coker[[x*y, x*z]];
"""


def _run(body, **kw):
    return run_text(PREAMBLE + body, RunOptions(timing=False, **kw))


def test_reference_script_counts():
    session, commands = parse_session(SCRIPT.read_text())
    assert session.kinds() == {"ring": 1, "ideal": 3, "list": 0, "module": 1}
    assert [c.verb for c in commands] == ["fgrade", "fgrade"]
    assert all(c.options == {"method": "both"} for c in commands)


def test_reference_script_values():
    doc, code = run_text(SCRIPT.read_text(), RunOptions(timing=False))
    assert code == 0
    assert [r["value"] for r in doc["results"]] == [1, 2]
    assert all(r["methods_agree"] for r in doc["results"])


def test_empty_input():
    session, commands = parse_session("")
    assert session.ring is None and commands == []
    doc, code = run_text("")
    assert code == 0 and doc["results"] == []


def test_unclosed_list_reports_position():
    with pytest.raises(ParseError) as err:
        parse_session("ring R = QQ[x1];\nideal a = (x1,")
    e = err.value
    assert (e.line, e.column) == (2, 15)
    assert e.expected


def test_juxtaposition_is_an_error():
    with pytest.raises(ParseError) as err:
        parse_session("ring R = QQ[x,y];\nideal a = (2x);")
    assert err.value.line == 2 and "'*'" in err.value.expected


@pytest.mark.parametrize(
    "text",
    [
        "ideal a = (x);",  # no ring yet
        "ring R = QQ[x];\nring S = QQ[y];",
        "ring R = QQ[x];\nideal a = (x);\nideal a = (x^2);",
        "ring R = QQ[x];\nideal a = (y);",
        "ring R = QQ[x];\nfgrade a a R;",
        "ring R = QQ[x];\nfrobnicate R;",
        "ring R = Fp(12)[x];",
        "ring R = QQ[x] order=weird;",
        "ring R = QQ[x];\nideal a = (x) @;",
    ],
)
def test_parse_errors_carry_location(text):
    with pytest.raises(ParseError) as err:
        parse_session(text)
    assert err.value.line >= 1 and err.value.column >= 1
    assert err.value.as_dict()["type"] == "ParseError"


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("ring R = QQ[x];\nideal a = (x,")
    assert main(["run", str(p), "--no-timing"]) == 1


def test_hyphenated_verbs_and_options():
    session, commands = parse_session(PREAMBLE + "check-frs xs m M;\nmax-frs m (x, y) M seed=4 retries=8;")
    assert [c.verb for c in commands] == ["check-frs", "max-frs"]
    assert commands[1].options == {"seed": 4, "retries": 8}


def test_graded_lex_and_fp_ring():
    session, _ = parse_session("ring R = Fp(32003)[a1,a2] order=graded-lex;")
    assert session.ring.describe() == "Fp(32003)[a1,a2] order=graded-lex"


def test_run_fgrade_variants():
    doc, code = _run("fgrade m b F method=prime-min;\nfgrade m (x) F method=koszul;\nfgrade m m F;")
    assert code == 0
    vals = [r["value"] for r in doc["results"]]
    assert vals == [1, 1, "infinity"]
    assert doc["results"][0]["prime"] == "(x)"


def test_check_frs_output():
    doc, code = _run("check-frs xs m M;\ncheck-frs (x) R T;")
    assert code == 0
    first = doc["results"][0]
    assert first["valid"] is True and len(first["steps"]) == 2
    assert doc["results"][1]["valid"] is False and doc["results"][1]["failure_index"] == 1


def test_max_frs_echoes_seed():
    doc, code = _run("max-frs m (x, y) M;", seed=11)
    r = doc["results"][0]
    assert code == 0 and r["value"] == 2 and r["seed"] == 11


def test_precondition_exit_code_and_stop():
    doc, code = _run("max-frs (x) (x) F;\ngb m;")
    assert code == 2
    assert len(doc["results"]) == 1
    assert doc["results"][0]["error"]["type"] == "PreconditionError"


def test_bad_option_is_precondition():
    doc, code = _run("gb m method=ext;")
    assert code == 2


def test_method_disagreement_exit_code(monkeypatch):
    def fake(a, b_gens, M):
        return FGradeReport(99, "koszul")

    monkeypatch.setattr(runner, "fgrade_koszul", fake)
    doc, code = _run("fgrade m b F method=both;")
    assert code == 3
    r = doc["results"][0]
    assert r["methods_agree"] is False and r["error"]["type"] == "MethodDisagreement"


def test_engine_error_exit_code(monkeypatch):
    from fgrade_kernel.errors import EngineError

    def boom(*args, **kw):
        raise EngineError("simulated")

    monkeypatch.setattr(runner, "fgrade_ext", boom)
    _, code = _run("fgrade m b F;")
    assert code == 1


def test_all_verbs_run():
    body = """
    gb (x^2 + y^2, x*y);
    dim b;
    dim M;
    ann T;
    depth (x, y) M;
    ext 1 (x) M;
    koszul-homology (x) M;
    check-fmodule m (x, y) F primes=all;
    check-fmodule m (x) M primes=[(x), (x, y)];
    check-bcm (x, y) M;
    """
    doc, code = _run(body)
    assert code == 0, doc
    r = {i: x for i, x in enumerate(doc["results"])}
    assert r[0]["value"] == ["y^3", "x^2 + y^2", "x*y"]
    assert (r[1]["value"], r[2]["value"]) == (2, 3)
    assert r[3]["value"] == "(x*y, x*z)"
    assert r[4]["value"] == 1
    assert r[5]["value"]["zero"] is False
    assert [h["zero"] for h in r[6]["value"]] == [False, True]
    assert r[7]["verdict"] == "holds-on-candidates"
    assert [row["fgrade"] for row in r[8]["rows"]] == [1, 2]
    assert r[9]["value"] is False


def test_emitted_objects_reparse():
    doc, _ = _run("gb (x^2 + 1/2*y, x*y - z);\nann T;\next 1 (x) M;")
    from fgrade_kernel.ring import polynomial_ring

    R = polynomial_ring("x,y,z")
    for s in doc["results"][0]["value"]:
        assert str(R.parse(s)) == s
    ann = doc["results"][1]["value"]
    assert str(parse_ideal(ann, R)) == ann
    rows = doc["results"][2]["value"]["presentation"]
    text = "[" + ",".join("[" + ",".join(row) + "]" for row in rows) + "]"
    Mx = parse_matrix(text, R)
    assert [[str(e) for e in row] for row in Mx.rows()] == rows


def test_output_is_deterministic():
    text = SCRIPT.read_text() + "\nmax-frs a bp M seed=5;"
    a = dumps(run_text(text, RunOptions(timing=False))[0])
    b = dumps(run_text(text, RunOptions(timing=False))[0])
    assert a == b
    assert "wall_time" not in a


def test_timing_present_by_default():
    doc, _ = run_text(SCRIPT.read_text())
    assert all("wall_time" in r for r in doc["results"])


def test_main_writes_json(tmp_path, capsys):
    out = tmp_path / "out.json"
    code = main(["run", str(SCRIPT), "--json", str(out), "--no-timing"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload == json.loads(capsys.readouterr().out)


def test_pretty_rendering(capsys):
    assert main(["run", str(SCRIPT), "--pretty", "--no-timing"]) == 0
    text = capsys.readouterr().out
    assert "fgrade a b M method=both: 1" in text and "exit code 0" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fgrade_kernel", "run", str(SCRIPT), "--no-timing"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert [r["value"] for r in json.loads(proc.stdout)["results"]] == [1, 2]


def test_run_with_parsed_session():
    session, commands = parse_session(PREAMBLE + "dim m;")
    doc, code = run(session, commands, RunOptions(timing=False))
    assert code == 0 and doc["results"][0]["value"] == 0
    assert isinstance(session.lookup("m")[1], Ideal)
