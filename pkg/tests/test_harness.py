import json
from pathlib import Path

import pytest

from csco_criterion.criterion import evaluate_criterion
from csco_criterion.errors import InputError
from csco_criterion.harness import BUILTINS, builtin_scenario, builtin_scenarios, render_report
from csco_criterion.harness.builtins import MAX_L
from csco_criterion.harness.cli import EXIT_INPUT, EXIT_OK, main
from csco_criterion.harness.report import report_to_dict

MALFORMED = sorted((Path(__file__).parent / "data" / "malformed").glob("*.json"))

TOP_KEYS = {"scenario", "a_csco", "b_csco", "c_norms", "condition_a_rows", "expected_c_match",
            "states", "uncertainty_ok"}
STATE_KEYS = {"a_labels", "expectation_max", "action_norms", "condition_b_literal",
              "condition_b_operational", "criterion_verdict", "oracle_verdict", "distribution",
              "mutual_information", "schmidt_rank", "agreement"}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_two_electron_expressions():
    s = builtin_scenario("two_electron")
    assert [e.text for e in s.a_set] == [
        "(Sx(1)+Sx(2))^2 + (Sy(1)+Sy(2))^2 + (Sz(1)+Sz(2))^2",
        "Sz(1)+Sz(2)",
    ]
    assert [e.text for e in s.b_set] == ["Sz(1)", "Sz(2)"]


def test_ghz_a_set():
    for s in builtin_scenarios("ghz"):
        assert [e.text for e in s.a_set] == ["X(1)*Y(2)*Y(3)", "Y(1)*X(2)*Y(3)", "Y(1)*Y(2)*X(3)"]


def test_bell_has_three_variants():
    assert [s.name for s in builtin_scenarios("bell")] == ["bell:x", "bell:y", "bell:z"]
    with pytest.raises(InputError):
        builtin_scenario("bell")


def test_spin_orbit_l0_and_limits():
    s = builtin_scenario("spin_orbit", l=0)
    assert s.layout.total_dim == 2
    assert builtin_scenario("spin_orbit", l=MAX_L).layout.total_dim == 2 * (2 * MAX_L + 1)
    for bad in (-1, MAX_L + 1):
        with pytest.raises(InputError):
            builtin_scenario("spin_orbit", l=bad)


def test_unknown_builtin():
    with pytest.raises(InputError):
        builtin_scenario("nope")


def test_bell_text_has_one_line_per_state():
    text = render_report(evaluate_criterion(builtin_scenario("bell", variant="z")))
    rows = [ln for ln in text.splitlines() if "PREDICTED_ENTANGLED" in ln]
    assert len(rows) == 4
    for labels in ["(+1, -1)", "(-1, +1)", "(+1, +1)", "(-1, -1)"]:
        assert sum(labels in ln for ln in rows) == 1


def test_two_electron_json_literal_b_false():
    doc = json.loads(render_report(evaluate_criterion(builtin_scenario("two_electron")), "json"))
    assert len(doc["states"]) == 4
    assert all(st["condition_b_literal"] is False for st in doc["states"])


def test_deterministic_state_marginals():
    doc = report_to_dict(evaluate_criterion(builtin_scenario("spin_orbit", l=0)))
    for st in doc["states"]:
        assert st["oracle_verdict"] == "DETERMINISTIC"
        assert [len(m) for m in st["marginals"]] == [1, 1]
        assert st["distribution"][0]["p"] == pytest.approx(1.0, abs=1e-12)
        assert st["mutual_information"] == [[0.0, 0.0], [0.0, 0.0]]


def test_plus_product_text_flags_disagreement():
    text = render_report(evaluate_criterion(builtin_scenario("plus_product")))
    assert "DISAGREEMENT" in text


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_schema_and_golden_stability(capsys, name):
    code, out, _ = run_cli(capsys, "builtin", name, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    docs = doc if isinstance(doc, list) else [doc]
    for d in docs:
        assert TOP_KEYS <= d.keys()
        assert {"commuting", "complete", "duplicates"} <= d["a_csco"].keys()
        for st in d["states"]:
            assert STATE_KEYS <= st.keys()
            assert isinstance(st["schmidt_rank"], int) or st["schmidt_rank"] is None
            assert isinstance(st["agreement"], bool)
            for point in st["distribution"]:
                assert {"b_labels", "p"} <= point.keys()
    again = run_cli(capsys, "builtin", name, "--json")[1]
    assert again == out


def test_probabilities_keep_full_precision(capsys):
    out = run_cli(capsys, "builtin", "spin_orbit", "--json")[1]
    ps = [p["p"] for st in json.loads(out)["states"] for p in st["distribution"]]
    # interior states carry 1/3 and 2/3: a short repr would lose digits
    assert any(abs(p - 1 / 3) < 1e-12 and len(repr(p)) >= 17 for p in ps)


def test_cli_text_outputs(capsys):
    code, out, _ = run_cli(capsys, "builtin", "two_electron")
    assert code == EXIT_OK and out.startswith("Scenario: two_electron")
    code, out, _ = run_cli(capsys, "builtin", "spin_orbit", "--l", "2")
    assert code == EXIT_OK and "spin_orbit" in out


def test_cli_list(capsys):
    code, out, _ = run_cli(capsys, "list")
    assert code == EXIT_OK
    assert [ln.split()[0] for ln in out.splitlines()] == list(BUILTINS)


def test_cli_missing_file(capsys):
    code, out, err = run_cli(capsys, "check", "missing.json")
    assert code == EXIT_INPUT and out == ""
    assert "missing.json" in err


def test_cli_plus_product_agreement_false(capsys):
    code, out, _ = run_cli(capsys, "builtin", "plus_product", "--json")
    assert code == EXIT_OK
    assert {st["agreement"] for st in json.loads(out)["states"]} == {False}


def test_cli_bad_l_and_usage(capsys):
    assert run_cli(capsys, "builtin", "spin_orbit", "--l", "21")[0] == EXIT_INPUT
    assert run_cli(capsys, "builtin", "nope")[0] == EXIT_INPUT
    assert run_cli(capsys)[0] == EXIT_INPUT
    assert run_cli(capsys, "--help")[0] == EXIT_OK


def test_malformed_corpus_size():
    assert len(MALFORMED) == 5


@pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.stem)
def test_cli_malformed_files(capsys, path):
    code, out, err = run_cli(capsys, "check", str(path))
    assert code == EXIT_INPUT and out == ""
    assert path.name in err
    assert "line " in err and "column " in err


def _write_scenario(tmp_path, doc):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_cli_check_roundtrips_builtin(capsys, tmp_path):
    doc = builtin_scenario("two_electron").to_dict()
    path = _write_scenario(tmp_path, doc)
    code, out, _ = run_cli(capsys, "check", path, "--json")
    assert code == EXIT_OK
    direct = run_cli(capsys, "builtin", "two_electron", "--json")[1]
    assert json.loads(out)["states"] == json.loads(direct)["states"]


def test_cli_tolerance_overrides(capsys, tmp_path):
    path = _write_scenario(tmp_path, builtin_scenario("plus_product").to_dict())
    code, _, _ = run_cli(capsys, "check", path, "--tol-zero", "1e-12", "--tol-cluster", "1e-6")
    assert code == EXIT_OK
    code, _, err = run_cli(capsys, "check", path, "--tol-zero", "0.5")
    assert code == EXIT_INPUT and "zero_tol" in err


def test_cli_max_dim(capsys, tmp_path):
    path = _write_scenario(tmp_path, builtin_scenario("ghz", variant="1").to_dict())
    code, _, err = run_cli(capsys, "check", path, "--max-dim", "4")
    assert code == EXIT_INPUT and "dim" in err
