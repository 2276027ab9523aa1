import json
import pathlib

from glprover.cli import main
from glprover.hilbert import proof_to_json, verum_proof
from glprover.semantics import holds, is_itf, model_from_json, model_to_json
from glprover.sequent import check_derivation, derivation_from_json
from glprover.syntax import parse

PROOF_DIR = pathlib.Path(__file__).resolve().parent.parent / "proofs"

REFLECTION = "Box (Box p || Box (Not p)) --> (Box p || Box (Not p))"
GL_AXIOM = "Box (Box p --> p) --> Box p"


def test_prove_theorem_exit_0(capsys):
    assert main(["prove", "Not (Box False) --> Not (Box (Diam True))"]) == 0
    assert "proved" in capsys.readouterr().out


def test_prove_refuted_exit_1_with_countermodel(tmp_path, capsys):
    out = tmp_path / "cm.json"
    assert main(["prove", REFLECTION, "--emit-countermodel", str(out)]) == 1
    model, falsified_at = model_from_json(out.read_text())
    assert is_itf(model.frame)
    assert not holds(model, parse(REFLECTION), falsified_at)


def test_prove_parse_error_exit_2(capsys):
    assert main(["prove", "p -->"]) == 2
    assert "position" in capsys.readouterr().err


def test_prove_missing_formula_exit_2():
    assert main(["prove"]) == 2


def test_prove_budget_exit_3(capsys):
    assert main(["prove", GL_AXIOM, "--max-steps", "2"]) == 3
    assert "budget" in capsys.readouterr().err


def test_prove_formula_from_file(tmp_path):
    path = tmp_path / "f.gl"
    path.write_text(GL_AXIOM + "\n")
    assert main(["prove", "--file", str(path)]) == 0


def test_prove_inline_wins_over_file(tmp_path):
    path = tmp_path / "f.gl"
    path.write_text("False")
    assert main(["prove", GL_AXIOM, "--file", str(path)]) == 0


def test_prove_emit_proof_structured(tmp_path):
    out = tmp_path / "proof.json"
    assert main(["prove", GL_AXIOM, "--emit-proof", str(out), "--format", "structured"]) == 0
    d = derivation_from_json(out.read_text())
    assert check_derivation(d, parse(GL_AXIOM))


def test_prove_emit_proof_text_and_graph(tmp_path):
    text_out = tmp_path / "proof.txt"
    dot_out = tmp_path / "proof.dot"
    assert main(["prove", GL_AXIOM, "--emit-proof", str(text_out)]) == 0
    assert main(["prove", GL_AXIOM, "--emit-proof", str(dot_out), "--format", "graph"]) == 0
    assert "RBoxLob" in text_out.read_text()
    assert dot_out.read_text().startswith("digraph")


def test_prove_countermodel_graph_format(tmp_path):
    out = tmp_path / "cm.dot"
    assert main(["prove", REFLECTION, "--emit-countermodel", str(out), "--format", "graph"]) == 1
    assert out.read_text().startswith("digraph")


def test_check_model_roundtrip_reports_falsification(tmp_path, capsys):
    cm = tmp_path / "cm.json"
    main(["prove", REFLECTION, "--emit-countermodel", str(cm)])
    capsys.readouterr()
    doc = json.loads(cm.read_text())
    rc = main(["check-model", str(cm), REFLECTION, str(doc["falsifiedAt"])])
    assert rc == 1
    assert "does not hold" in capsys.readouterr().out


def test_check_model_holds(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"worlds": [0], "rel": [], "val": {}}')
    assert main(["check-model", str(path), "Box False", "0"]) == 0


def test_check_model_non_itf_reported(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text('{"worlds": [0], "rel": [[0, 0]], "val": {}}')
    assert main(["check-model", str(path), "True", "0"]) == 1
    assert "reflexive" in capsys.readouterr().out


def test_check_model_empty_worlds_exit_2(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"worlds": [], "rel": [], "val": {}}')
    assert main(["check-model", str(path), "True", "0"]) == 2


def test_check_model_malformed_exit_2(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    assert main(["check-model", str(path), "True", "0"]) == 2


def test_oracle_gl_axiom(capsys):
    assert main(["oracle", GL_AXIOM, "--max-worlds", "3"]) == 0
    assert "valid" in capsys.readouterr().out


def test_oracle_falsified_emits_witness(tmp_path):
    out = tmp_path / "witness.json"
    assert main(["oracle", "Box False", "--max-worlds", "2",
                 "--emit-countermodel", str(out)]) == 1
    model, falsified_at = model_from_json(out.read_text())
    assert not holds(model, parse("Box False"), falsified_at)


def test_oracle_zero_worlds_exit_2():
    assert main(["oracle", "True", "--max-worlds", "0"]) == 2


def test_oracle_budget_exit_3():
    assert main(["oracle", GL_AXIOM, "--max-worlds", "6"]) == 3


def test_henkin_box_false(tmp_path):
    model_out = tmp_path / "m.json"
    worlds_out = tmp_path / "w.json"
    rc = main(["henkin", "Box False", "--emit-model", str(model_out),
               "--emit-worlds", str(worlds_out)])
    assert rc == 1
    model, falsified_at = model_from_json(model_out.read_text())
    assert len(model.frame.worlds) == 2
    assert not holds(model, parse("Box False"), falsified_at)
    sidecar = json.loads(worlds_out.read_text())
    assert sidecar[str(falsified_at)] == ["Not False", "Not Box False"]


def test_henkin_theorem_exit_0():
    assert main(["henkin", GL_AXIOM]) == 0


def test_henkin_oversized_exit_3():
    big = " && ".join(f"a{i}" for i in range(14))
    assert main(["henkin", big]) == 3


def test_bisim_self_contains_identity(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text('{"worlds": [0, 1], "rel": [[0, 1]], "val": {"p": [1]}}')
    assert main(["bisim", str(path), str(path)]) == 0
    pairs = json.loads(capsys.readouterr().out)
    assert [0, 0] in pairs and [1, 1] in pairs


def test_bisim_disjoint_chain_copies(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"worlds": [0, 1], "rel": [[0, 1]], "val": {}}')
    b.write_text('{"worlds": [0, 1], "rel": [[0, 1]], "val": {}}')
    assert main(["bisim", str(a), str(b)]) == 0
    pairs = json.loads(capsys.readouterr().out)
    assert pairs == [[0, 0], [1, 1]]


def test_bisim_malformed_exit_2(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("[]")
    good = tmp_path / "g.json"
    good.write_text('{"worlds": [0], "rel": [], "val": {}}')
    assert main(["bisim", str(path), str(good)]) == 2


def test_check_proof_shipped_verum():
    assert main(["check-proof", str(PROOF_DIR / "verum.json")]) == 0


def test_check_proof_mutated_exit_1(tmp_path, capsys):
    doc = json.loads(proof_to_json(verum_proof()))
    doc["steps"][2]["formula"] = "z"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["check-proof", str(path)]) == 1
    assert "step 2" in capsys.readouterr().out


def test_check_proof_empty_file_exit_2(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    assert main(["check-proof", str(path)]) == 2


def test_emitted_files_are_canonical(tmp_path):
    cm = tmp_path / "cm.json"
    main(["prove", REFLECTION, "--emit-countermodel", str(cm)])
    text = cm.read_text()
    model, falsified_at = model_from_json(text)
    assert model_to_json(model, falsified_at) == text


def test_usage_error_exit_2():
    assert main(["prove", "p", "--format", "yaml"]) == 2
    assert main(["no-such-command"]) == 2
