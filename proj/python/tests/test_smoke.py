import json
import pathlib

import pytest

import proofforge as pf

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


@pytest.fixture
def fig1():
    return pf.Ontology((DATA / "fig1.dl").read_text())


def vertex_axioms(proof):
    return [v["axiom"] for v in proof["vertices"]]


def test_ontology(fig1):
    assert len(fig1) == 4
    assert fig1.concept_names == {"A", "B", "C1", "C2", "C3"}
    assert fig1.role_names == {"r"}
    assert fig1.entails("sub(A, B)")
    assert fig1.entails("A ⊑ B")
    assert not fig1.entails("sub(B, A)")
    assert fig1.classify() == ["A ⊑ B", "C1 ⊑ C3", "C2 ⊑ C3"]


def test_axiom():
    a = pf.Axiom("sub(A, some(r, B))")
    assert str(a) == "A ⊑ ∃r.B"
    assert a == pf.Axiom("sub(A, some(r, B))")
    assert len({a, pf.Axiom("sub(A, some(r, B))")}) == 1


def test_parse_error():
    with pytest.raises(pf.ParseError):
        pf.Ontology("sub(A,")
    assert issubclass(pf.ParseError, pf.Error)


def test_justification_and_forget(fig1):
    assert len(fig1.justification("sub(A, B)")) == 4
    view, failed = fig1.forget(["A", "B"])
    assert failed == []
    assert [str(a) for a in view] == ["A ⊑ B"]


def test_worked_elimination_proof(fig1):
    proof, warnings = pf.explain(fig1, "sub(A, B)")
    assert warnings == []
    assert len(proof["vertices"]) == 7
    assert sorted(s["rule"] for s in proof["steps"]) == ["eliminate C1", "eliminate C2", "eliminate r, C3"]


@pytest.mark.parametrize("method", ["elim-heur", "elim-name-opt", "elim-size-opt", "detailed"])
def test_methods_produce_checked_proofs(fig1, method):
    proof, _ = pf.explain(fig1, "sub(A, B)", method)
    valid, summary = fig1.check(json.dumps(proof), "sub(A, B)", strict=True)
    assert valid, summary


def test_elk_methods():
    o = pf.Ontology("sub(A, some(r, B)) sub(B, C) sub(some(r, C), D)")
    for method in ("elk-size", "elk-depth"):
        proof, _ = pf.explain(o, "sub(A, D)", method)
        assert "A ⊑ D" in vertex_axioms(proof)
    with pytest.raises(pf.PreconditionViolation):
        pf.explain(pf.Ontology((DATA / "fig1.dl").read_text()), "sub(A, B)", "elk-size")


def test_known_signature(fig1):
    proof, _ = pf.explain(fig1, "sub(A, B)", known=["C1", "C2", "C3"])
    known = [v["axiom"] for v in proof["vertices"] if v.get("known")]
    assert known == ["C1 ⊑ C3"]


def test_errors(fig1):
    with pytest.raises(pf.NoProof):
        pf.explain(fig1, "sub(A, C1)")
    with pytest.raises(pf.PreconditionViolation):
        pf.explain(fig1, "sub(A, B)", "magic")
    assert "detailed" in pf.methods()
    assert len(pf.methods()) == 6
