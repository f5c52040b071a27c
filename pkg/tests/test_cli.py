import json

import pytest

from invgen.cli import main

# exit-code contract: 0 ok, 1 verification failure, 2 usage, 3 cap


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------

def test_classes_q7_table(capsys):
    code, out, _ = run(capsys, "classes", "--q", "7")
    assert code == 0
    rows = [l for l in out.splitlines() if l and not l.startswith("label")]
    assert len(rows) == 6


def test_classes_q4_rows(capsys):
    code, out, _ = run(capsys, "classes", "--q", "4", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["classes"]) == 5


def test_classes_csv(capsys):
    code, out, _ = run(capsys, "classes", "--q", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "label,order,size"


def test_classes_rejects_non_prime_power(capsys):
    code, _, err = run(capsys, "classes", "--q", "6")
    assert code == 2 and "prime power" in err


def test_p_f_spelling(capsys):
    code, out, _ = run(capsys, "classes", "--p", "3", "--f", "2", "--format", "json")
    assert code == 0 and json.loads(out)["q"] == 9


def test_conflicting_q_and_p(capsys):
    code, _, err = run(capsys, "classes", "--q", "9", "--p", "3", "--f", "2")
    assert code == 2


def test_q_below_4(capsys):
    code, _, err = run(capsys, "classes", "--q", "3")
    assert code == 2


# ---------------------------------------------------------------------------
# psi2
# ---------------------------------------------------------------------------

def test_psi2_both_q5(capsys):
    code, out, _ = run(capsys, "psi2", "--q", "5", "--method", "both")
    assert code == 0
    assert "count=4" in out and "match=True" in out


def test_psi2_structural_q7(capsys):
    code, out, _ = run(capsys, "psi2", "--q", "7", "--method", "structural",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 8
    assert payload["pairs"] == sorted(payload["pairs"])
    assert 0 < payload["probability"] < 1


def test_psi2_oracle_cap(capsys):
    code, _, err = run(capsys, "psi2", "--q", "101", "--method", "oracle")
    assert code == 3 and "cap" in err


def test_psi2_csv(capsys):
    code, out, _ = run(capsys, "psi2", "--q", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "label1,label2"
    assert len(out.splitlines()) == 5


# ---------------------------------------------------------------------------
# graph
# ---------------------------------------------------------------------------

def test_graph_q7_dot(capsys):
    code, out, err = run(capsys, "graph", "--q", "7", "--plus", "--format", "dot")
    assert code == 0
    assert out.count(" -- ") == 4
    assert "vertices=4" in err


def test_graph_power_summary(capsys):
    code, out, err = run(capsys, "graph", "--q", "5", "--power", "2", "--plus")
    assert code == 0
    assert "components=1" in err


def test_graph_q9_keeps_isolated_without_plus(capsys):
    code, out, _ = run(capsys, "graph", "--q", "9", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["vertices"]) == 6
    isolated = [v for v in payload["vertices"]
                if not any(v in e for e in payload["edges"])]
    assert sorted(isolated) == ["inv", "unip:nsq", "unip:sq"]


def test_graph_out_file(tmp_path, capsys):
    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "graph", "--q", "7", "--plus", "--format", "dot",
                       "--out", str(target))
    assert code == 0
    assert target.read_text().startswith("graph lambda {")


# ---------------------------------------------------------------------------
# beta
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("q,value", [(5, 2), (7, 4), (9, 2)])
def test_beta_values(capsys, q, value):
    code, out, _ = run(capsys, "beta", "--q", str(q), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["beta"] == value
    assert payload["beta_even"] and payload["bounds_ok"]


def test_beta_orbits_flag(capsys):
    code, out, _ = run(capsys, "beta", "--q", "5", "--format", "json", "--orbits")
    payload = json.loads(out)
    assert len(payload["orbits"]) == 2


def test_beta_bound_report_fields(capsys):
    code, out, _ = run(capsys, "beta", "--q", "25", "--format", "json")
    payload = json.loads(out)
    assert payload["n_lower_bound"]["component_bound"] == "92378"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_small_range(capsys):
    code, out, _ = run(capsys, "verify", "--q-range", "4..9")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] and payload["failures"] == []
    assert set(payload["checks"]) == {"4", "5", "7", "8", "9"}
    assert payload["checks"]["5"]["oracle_equals_structural"] is True


def test_verify_structural_only_range(capsys):
    code, out, _ = run(capsys, "verify", "--q-range", "61..67")
    assert code == 0
    payload = json.loads(out)
    assert "oracle_equals_structural" not in payload["checks"]["64"]
    assert payload["checks"]["64"]["probability"] is True


def test_verify_bad_range(capsys):
    code, _, err = run(capsys, "verify", "--q-range", "13..4")
    assert code == 2


def test_verify_respects_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("INVGEN_ORACLE_CAP", "5")
    code, out, _ = run(capsys, "verify", "--q-range", "4..8")
    assert code == 0
    payload = json.loads(out)
    assert "oracle_equals_structural" in payload["checks"]["4"]
    assert "oracle_equals_structural" not in payload["checks"]["7"]


def test_usage_no_command(capsys):
    assert main([]) == 2


def test_byte_stable_output(capsys):
    code1, out1, _ = run(capsys, "psi2", "--q", "13", "--format", "json")
    code2, out2, _ = run(capsys, "psi2", "--q", "13", "--format", "json")
    assert out1 == out2
