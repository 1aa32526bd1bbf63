import json

import pytest

from sppe import cli


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def paced_instance(tmp_path):
    payload = {
        "n": 2, "m": 1,
        "valuations": [["2"], ["1"]],
        "budgets": ["1/2", "10"],
    }
    return _write(tmp_path, "inst.json", payload)


def test_solve_emits_exact_strings(capsys, paced_instance):
    code, out = _run(capsys, ["solve", paced_instance])
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha"] == ["1/2", "1"]
    assert doc["prices"] == ["1"]
    assert doc["x"] == [["1/2"], ["1/2"]]
    assert doc["stats"]["winning_state_index"] == 1
    assert doc["meta"]["removed_goods"] == []


def test_solve_verify_round_trip(capsys, tmp_path, paced_instance):
    code, out = _run(capsys, ["solve", paced_instance])
    assert code == 0
    eq_path = tmp_path / "eq.json"
    eq_path.write_text(out)
    code, out = _run(capsys, ["verify", paced_instance, str(eq_path)])
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_flags_tampered_multiplier(capsys, tmp_path, paced_instance):
    code, out = _run(capsys, ["solve", paced_instance])
    doc = json.loads(out)
    # unpace the paced buyer and hand them the whole good
    doc["alpha"] = ["1", "1"]
    doc["x"] = [["1"], ["0"]]
    eq_path = _write(tmp_path, "bad.json", doc)
    code, out = _run(capsys, ["verify", paced_instance, eq_path])
    assert code == 1
    report = json.loads(out)
    assert not report["pass"]
    failing = [k for k in ("a", "b", "c", "d") if not report["conditions"][k]["ok"]]
    assert set(failing) <= {"c", "d"} and failing


def test_verify_flags_overfull_allocation(capsys, tmp_path, paced_instance):
    eq_path = _write(tmp_path, "bad.json", {"alpha": ["1", "1"], "x": [["3/4"], ["3/4"]]})
    code, out = _run(capsys, ["verify", paced_instance, eq_path])
    assert code == 1
    assert json.loads(out)["bounds"]["ok"] is False


def test_parse_failure_exits_2(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code, out = _run(capsys, ["solve", str(bad)])
    assert code == 2 and "error" in json.loads(out)
    code, _ = _run(capsys, ["solve", str(tmp_path / "missing.json")])
    assert code == 2


def test_goods_guard_exits_3(capsys, tmp_path):
    payload = {"valuations": [[1, 2, 3, 4, 5]], "budgets": [1]}
    path = _write(tmp_path, "wide.json", payload)
    code, _ = _run(capsys, ["solve", path])
    assert code == 3


def test_gen_is_deterministic(capsys):
    _, first = _run(capsys, ["gen", "-n", "10", "-c", "2", "--seed", "7"])
    _, second = _run(capsys, ["gen", "-n", "10", "-c", "2", "--seed", "7"])
    assert first == second


def test_gen_types_replicates_columns(capsys):
    code, out = _run(capsys, ["gen", "-n", "4", "--types", "2", "--m", "40", "--seed", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 40
    columns = {tuple(row[j] for row in doc["valuations"]) for j in range(40)}
    assert len(columns) == 2


def test_gen_respects_value_range(capsys):
    from fractions import Fraction

    _, out = _run(capsys, ["gen", "-n", "6", "-c", "2", "--seed", "5", "--value-range", "1..100"])
    doc = json.loads(out)
    vals = [Fraction(v) for row in doc["valuations"] for v in row]
    assert all(1 <= v <= 100 for v in vals)


def test_gen_rejects_bad_parameters(capsys):
    code, _ = _run(capsys, ["gen", "-n", "0", "-c", "2", "--seed", "1"])
    assert code == 2
    code, _ = _run(capsys, ["gen", "-n", "3", "--types", "4", "--m", "2", "--seed", "1"])
    assert code == 2


def test_quiet_drops_stats(capsys, paced_instance):
    _, out = _run(capsys, ["solve", paced_instance, "--quiet"])
    doc = json.loads(out)
    assert "stats" not in doc and "alpha" in doc


def test_by_types_matches_aggregated_totals(capsys, tmp_path):
    from fractions import Fraction

    payload = {
        "valuations": [["2", "2", "1", "1"], ["1", "1", "3", "3"]],
        "budgets": ["4", "5"],
    }
    path = _write(tmp_path, "typed.json", payload)
    code, out = _run(capsys, ["solve", path, "--by-types"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["prices"]) == 4

    code, agg_out = _run(capsys, ["aggregate", path])
    assert code == 0
    agg = json.loads(agg_out)
    assert agg["num_types"] == 2
    assert agg["types"] == [[0, 1], [2, 3]]

    agg_path = _write(tmp_path, "agg.json", agg["aggregated"])
    _, agg_solved = _run(capsys, ["solve", agg_path])
    agg_doc = json.loads(agg_solved)
    for i in range(2):
        total = sum(Fraction(v) for v in doc["payments"][i])
        agg_total = sum(Fraction(v) for v in agg_doc["payments"][i])
        assert total == agg_total


def test_max_goods_flag_lifts_the_guard(capsys, tmp_path):
    payload = {"valuations": [[1, 2, 3, 4, 5]], "budgets": [1]}
    path = _write(tmp_path, "wide.json", payload)
    code, out = _run(capsys, ["solve", path, "--max-goods", "5", "--skip-verify"])
    assert code == 0
    assert json.loads(out)["alpha"] == ["1"]


def test_empty_market_through_the_cli(capsys, tmp_path):
    payload = {"valuations": [["0", "0"], ["0", "0"]], "budgets": ["1", "2"]}
    path = _write(tmp_path, "dead.json", payload)
    code, out = _run(capsys, ["solve", path])
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha"] == ["1", "1"]
    assert doc["x"] == [["0", "0"], ["0", "0"]]
    assert doc["meta"]["removed_goods"] == [0, 1]
    eq_path = tmp_path / "dead_eq.json"
    eq_path.write_text(out)
    assert cli.main(["verify", str(path), str(eq_path)]) == 0
    capsys.readouterr()


def test_bench_rows_and_single_good_bound(capsys):
    code, out = _run(capsys, ["bench", "-n", "4,6", "-c", "1", "--seeds", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,c,seed,states_enumerated")
    assert len(lines) == 1 + 4
    for line in lines[1:]:
        cells = line.split(",")
        n, states = int(cells[0]), int(cells[3])
        assert states <= 2 * n + 1
