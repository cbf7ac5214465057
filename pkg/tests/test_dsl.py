"""Script language: parsing, formatting, execution."""

import json

import pytest

from lielab.dsl import Script, execute, format_script, parse_script, report_json, run_failed
from lielab.errors import ParseError, Redeclaration, TorsionError, UndeclaredName


GOOD = """field F Fp 5
algebra T over F = ut 3
algebra L over F = minus T
extension E = L contains span [0 1 0 0 0 0; 0 0 1 0 0 0; 0 0 0 0 1 0]
check qann L L enumerate
check weakq E
"""


def test_parse_counts_statements():
    s = parse_script(GOOD)
    assert len(s.statements) == 6
    assert [st.kind for st in s.statements] == [
        "field", "algebra", "algebra", "extension", "check", "check",
    ]


def test_script_hash_is_sha256_of_source():
    import hashlib

    s = parse_script(GOOD)
    assert s.source_hash == hashlib.sha256(GOOD.encode()).hexdigest()


def test_comments_and_blank_lines_ignored():
    s = parse_script("# intro\n\nfield F Q\n  # trailing\n")
    assert len(s.statements) == 1


def test_round_trip_is_structural_identity():
    s = parse_script(GOOD)
    assert parse_script(format_script(s)).statements == s.statements


def test_fmt_normalizes_whitespace():
    messy = "field   F    Fp   5\nalgebra T over F =   ut 3\n"
    assert format_script(parse_script(messy)) == "field F Fp 5\nalgebra T over F = ut 3\n"


def test_table_statement_round_trip():
    src = "field R Q\nalgebra H over R = table dim 3 { e1 * e2 = 1 e3; e2 * e1 = -1 e3; }\n"
    s = parse_script(src)
    assert format_script(s) == src
    assert parse_script(format_script(s)).statements == s.statements


def test_fused_basis_references_accepted():
    a = parse_script("field F Fp 5\nalgebra A over F = table dim 2 { e1*e1 = 1 e1; }\n")
    b = parse_script("field F Fp 5\nalgebra A over F = table dim 2 { e 1 * e 1 = 1 e 1; }\n")
    assert a.statements == b.statements


def test_rational_scalars_parse():
    s = parse_script("field R Q\nalgebra A over R = table dim 1 { e1 * e1 = 1/2 e1; }\n")
    stmt = s.statements[1]
    from fractions import Fraction

    assert stmt.data[2][2][0][2][0][0] == Fraction(1, 2)


def test_parse_time_torsion_error():
    with pytest.raises(TorsionError):
        parse_script("field F Fp 3\n")
    with pytest.raises(TorsionError):
        parse_script("field F Fp 2\n")


def test_redeclaration_rejected():
    with pytest.raises(Redeclaration):
        parse_script("field F Q\nfield F Fp 5\n")


def test_undeclared_name_rejected():
    with pytest.raises(UndeclaredName):
        parse_script("check snd M\n")
    with pytest.raises(UndeclaredName):
        parse_script("field F Q\nalgebra A over F = minus B\n")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_script("field F Fp 5\nalgebra A over F = matrix x\n")
    assert exc.value.line == 2
    assert exc.value.col == 27
    assert "integer" in exc.value.expected


def test_field_mismatch_rejected():
    src = "field F Fp 5\nfield G Fp 7\nalgebra A over F = matrix 2\nalgebra B over G = minus A\n"
    with pytest.raises(ParseError) as exc:
        parse_script(src)
    assert "over field" in exc.value.expected


def test_check_budget_clause():
    s = parse_script("field F Fp 5\nalgebra A over F = matrix 2\ncheck semiprime A budget 12345\n")
    kind, args, budget = s.statements[2].data
    assert kind == "semiprime" and budget == 12345


def test_empty_script_runs_clean():
    s = parse_script("")
    assert s.statements == ()
    rep = execute(s)
    assert rep["results"] == []
    assert not run_failed(rep)


def test_execute_report_shape():
    rep = execute(parse_script(GOOD), budget=200_000, seed=9)
    assert rep["budget"] == 200_000
    assert rep["seed"] == 9
    assert rep["tool_version"]
    assert len(rep["results"]) == 2
    for res in rep["results"]:
        assert set(res) == {
            "statement_index",
            "statement_text",
            "verdict",
            "witness",
            "hypothesis_failures",
            "error",
            "elapsed_ms",
        }


def test_qann_check_lists_elements_and_witness():
    rep = execute(parse_script(GOOD))
    res = rep["results"][0]
    assert res["verdict"] == "holds"
    assert res["witness"]["count"] == 225
    assert len(res["witness"]["elements"]) == 225
    assert res["witness"]["non_closure_witness"] is not None


def test_runtime_error_recorded_and_run_continues():
    src = """field F Fp 5
algebra A over F = matrix 2
algebra L over F = minus A
extension W = L contains span [0 1 0 0]
algebra Q over F = quotient A W
check snd A
"""
    rep = execute(parse_script(src))
    errors = [r for r in rep["results"] if r["error"]]
    assert len(errors) == 1
    assert errors[0]["error"]["type"] == "NotAnIdeal"
    final = rep["results"][-1]
    assert final["verdict"] == "fails"  # snd of a unital algebra never holds


def test_budget_error_recorded_per_statement():
    src = "field F Fp 5\nalgebra A over F = matrix 2\ncheck qann A A budget 3\ncheck center A\n"
    rep = execute(parse_script(src))
    assert rep["results"][0]["error"]["type"] == "BudgetExceeded"
    assert rep["results"][1]["verdict"] == "holds"


def test_exit_policy():
    ok = execute(parse_script("field F Fp 5\nalgebra A over F = matrix 2\ncheck semiprime A\n"))
    assert not run_failed(ok)
    bad = execute(parse_script("field F Fp 5\nalgebra A over F = ut 2\ncheck semiprime A\n"))
    assert run_failed(bad)
    # undecided passes unless strict
    und = execute(parse_script("field R Q\nalgebra A over R = matrix 2\ncheck snd A\n"))
    assert not run_failed(und)
    assert run_failed(und, strict=True)


def test_report_json_is_exact():
    src = "field R Q\nalgebra A over R = table dim 1 { e1 * e1 = 1/3 e1; }\ncheck center A\n"
    rep = execute(parse_script(src))
    payload = json.loads(report_json(rep))
    basis = payload["results"][0]["witness"]["basis"]
    assert basis == [["1"]]  # rationals serialized as strings
