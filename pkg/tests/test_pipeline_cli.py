import csv
import io
import json

import numpy as np
import pytest
import yaml

import golden
from ivif_edas.cli import main
from ivif_edas.errors import DomainError, PipelineError
from ivif_edas.pipeline import run, sweep, sweep_to_csv
from ivif_edas.problem import bundled_problem_path

CASE = str(bundled_problem_path("case_study"))


class TestRun:
    def test_edas_report(self, numeric_problem):
        rep = run(numeric_problem)
        assert rep.ranking == golden.RANKING
        assert rep.metadata["weights_source"] == "entropy"
        for name in ("group_matrix", "normalized_matrix", "entropy", "weights", "average_solution",
                     "positive_distances", "negative_distances", "result"):
            assert name in rep.tables
        assert rep.tables["normalized_matrix"].values.shape == (5, 24)

    def test_without_intermediates(self, numeric_problem):
        rep = run(numeric_problem, emit_intermediates=False)
        assert set(rep.tables) == {"weights", "result"}

    def test_fixed_weights_equal_entropy_path(self, numeric_problem):
        entropy_rep = run(numeric_problem)
        fixed = numeric_problem.with_fixed_weights(entropy_rep.tables["weights"].values[0])
        fixed_rep = run(fixed)
        assert fixed_rep.metadata["weights_source"] == "fixed"
        np.testing.assert_array_equal(fixed_rep.scores, entropy_rep.scores)
        assert fixed_rep.ranking == entropy_rep.ranking

    @pytest.mark.parametrize("method", ["ivifwa", "topsis", "taxonomy", "todim"])
    def test_comparators_pick_same_best(self, numeric_problem, method):
        rep = run(numeric_problem, method)
        assert rep.ranking[0] == "HL2"

    def test_topsis_form_flagged(self, reference_problem):
        rep = run(reference_problem, "topsis")
        assert rep.metadata["topsis_form"] == "unweighted_distance"
        np.testing.assert_allclose(rep.scores, golden.TOPSIS_CLOSENESS, atol=0.01)

    def test_stage_annotated_errors(self, reference_problem):
        flat = reference_problem.with_fixed_weights(None)
        same = flat.__class__(**{**flat.__dict__, "matrices": [np.tile(flat.matrices[0][:1], (5, 1, 1))]})
        with pytest.raises(PipelineError) as info:
            run(same)
        assert info.value.context["stage"] == "weights"

    def test_deterministic_serialization(self, linguistic_problem):
        a = run(linguistic_problem, "todim").to_structured_text()
        b = run(linguistic_problem, "todim").to_structured_text()
        assert a == b

    def test_numbers_round_trip(self, numeric_problem):
        rep = run(numeric_problem)
        doc = yaml.safe_load(rep.to_structured_text())
        back = np.array(doc["tables"]["positive_distances"]["values"])
        np.testing.assert_array_equal(back, rep.tables["positive_distances"].values)
        rows = list(csv.reader(io.StringIO(rep.to_csv_texts()["result"])))
        assert rows[0] == ["", "sp", "sn", "nsp", "nsn", "score", "rank"]
        assert float(rows[1][5]) == rep.scores[0]
        assert doc["rounded"]["result"]["values"][1][4] == round(rep.scores[1], 3)


class TestSweep:
    def test_single_default_value_equals_run(self, numeric_problem):
        pts = sweep(numeric_problem, "alpha", [numeric_problem.cpt.alpha])
        np.testing.assert_array_equal(pts[0].scores, run(numeric_problem).scores)

    def test_out_of_range_rejected_before_running(self, numeric_problem):
        with pytest.raises(DomainError):
            sweep(numeric_problem, "beta", [0.5, 1.5])
        with pytest.raises(DomainError):
            sweep(numeric_problem, "rho", [0.9])
        with pytest.raises(DomainError):
            sweep(numeric_problem, "theta", [1.0])

    def test_order_kept_with_threads(self, numeric_problem):
        grid = [0.95, 0.05, 0.55, 0.25]
        seq = sweep(numeric_problem, "gamma", grid)
        par = sweep(numeric_problem, "gamma", grid, max_workers=4)
        assert [p.value for p in par] == grid
        for a, b in zip(seq, par):
            np.testing.assert_array_equal(a.scores, b.scores)

    def test_csv(self, numeric_problem):
        pts = sweep(numeric_problem, "rho", [1.5, 3.0])
        rows = list(csv.reader(io.StringIO(sweep_to_csv(pts, "rho", numeric_problem.alternatives))))
        assert rows[0] == ["rho", "HL1", "HL2", "HL3", "HL4", "HL5", "ranking"]
        assert rows[1][-1] == "HL2 > HL5 > HL1 > HL3 > HL4"


class TestCli:
    def test_validate(self, capsys):
        assert main(["validate", CASE]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out == {"valid": True, "alternatives": 5, "attributes": 6, "experts": 5, "method": "edas"}

    def test_run_structured(self, capsys):
        assert main(["run", CASE, "--method", "taxonomy", "--emit-intermediates"]) == 0
        doc = yaml.safe_load(capsys.readouterr().out)
        assert doc["method"] == "taxonomy"
        assert "pairwise_distances" in doc["tables"]

    def test_run_csv_directory(self, tmp_path):
        assert main(["run", CASE, "--format", "csv", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "result.csv").exists() and (tmp_path / "ranking.csv").exists()

    def test_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", CASE, "--param", "delta", "--values", "0.15,0.88", "--out", str(out)]) == 0
        assert out.read_text().count("\n") == 3

    def test_error_record(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text(open(CASE).read().replace("weight: 0.20", "weight: 0.10"))
        assert main(["validate", str(bad)]) == 2
        record = json.loads(capsys.readouterr().err)
        assert record["error"]["type"] == "problem_file"

    def test_sweep_out_of_range(self, capsys):
        assert main(["sweep", CASE, "--param", "alpha", "--values", "0.5,2"]) == 2
        assert json.loads(capsys.readouterr().err)["error"]["parameter"] == "alpha"

    def test_computation_error_exit_code(self, tmp_path, capsys):
        flat = tmp_path / "flat.yaml"
        doc = yaml.safe_load(open(CASE))
        doc["matrices"] = {e: [["MG"] * 6] * 5 for e in doc["matrices"]}
        flat.write_text(yaml.safe_dump(doc))
        assert main(["run", str(flat)]) == 3
        assert json.loads(capsys.readouterr().err)["error"]["stage"] == "weights"
