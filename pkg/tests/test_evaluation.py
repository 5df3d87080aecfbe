import json

import numpy as np
import pytest

from heartbn import ConfusionMatrix, confusion, metrics, run_experiment


class TestConfusion:
    def test_perfect_three(self):
        cm = confusion([1, 0, 1], [1, 0, 1])
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (2, 1, 0, 0)

    def test_all_false_positives(self):
        cm = confusion([1] * 5, [0] * 5)
        assert cm.fp == 5
        assert cm.total == 5

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            confusion([1, 0], [1])

    def test_non_binary_labels(self):
        with pytest.raises(ValueError):
            confusion([2], [0])

    def test_51_of_60_gives_085(self):
        cm = ConfusionMatrix(tp=30, fp=4, fn=5, tn=21)
        assert cm.total == 60
        assert metrics(cm).accuracy == pytest.approx(0.85)


class TestMetrics:
    def test_worked_example(self):
        m = metrics(ConfusionMatrix(tp=20, fp=5, fn=4, tn=31))
        assert m.accuracy == pytest.approx(0.85)
        assert m.precision == pytest.approx(0.8)
        assert m.recall == pytest.approx(0.833333, abs=1e-6)
        assert m.f1 == pytest.approx(0.816327, abs=1e-6)

    def test_perfect_prediction(self):
        m = metrics(ConfusionMatrix(tp=10, fp=0, fn=0, tn=10))
        assert (m.accuracy, m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0, 1.0)

    def test_degenerate_precision_is_zero(self):
        m = metrics(ConfusionMatrix(tp=0, fp=0, fn=3, tn=7))
        assert m.precision == 0.0
        assert m.f1 == 0.0

    def test_empty_matrix_rejected(self):
        with pytest.raises(ValueError):
            metrics(ConfusionMatrix(0, 0, 0, 0))

    def test_accuracy_equals_agreement_fraction(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n = int(rng.integers(1, 50))
            predicted = rng.integers(0, 2, size=n).tolist()
            actual = rng.integers(0, 2, size=n).tolist()
            m = metrics(confusion(predicted, actual))
            agree = sum(p == a for p, a in zip(predicted, actual)) / n
            assert m.accuracy == agree


class TestRunExperiment:
    def test_deterministic_report(self, heart_table):
        first = run_experiment(heart_table, "bn-paper", 0.8, [3, 1])
        second = run_experiment(heart_table, "bn-paper", 0.8, [1, 3])
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_report_structure(self, heart_table):
        report = run_experiment(heart_table, "nb", 0.8, [0, 1])
        assert report["model_kind"] == "nb"
        assert [entry["seed"] for entry in report["per_seed"]] == [0, 1]
        entry = report["per_seed"][0]
        assert set(entry["confusion"]) == {"tp", "fp", "fn", "tn"}
        assert set(entry["metrics"]) == {"accuracy", "precision", "recall", "f1"}
        assert sum(entry["confusion"].values()) == 60

    def test_aggregate_mean_matches_per_seed(self, heart_table):
        report = run_experiment(heart_table, "bn-paper", 0.8, [0, 1, 2])
        accuracies = [entry["metrics"]["accuracy"] for entry in report["per_seed"]]
        assert report["aggregate"]["mean"]["accuracy"] == pytest.approx(
            float(np.mean(accuracies)), abs=1e-12
        )

    # the pc learner legitimately reports orientation conflicts on this data
    @pytest.mark.filterwarnings("ignore::heartbn.errors.ConflictingOrientationWarning")
    @pytest.mark.parametrize("learner", ["hc", "pc", "hybrid"])
    def test_learned_structure_variants_run(self, heart_table, learner):
        report = run_experiment(
            heart_table, "bn-learned", 0.8, [0], learner=learner, estimator="bayes", ess=5.0
        )
        assert report["learner"] == learner
        assert 0.0 <= report["per_seed"][0]["metrics"]["accuracy"] <= 1.0

    def test_unknown_learner_rejected(self, heart_table):
        with pytest.raises(ValueError):
            run_experiment(heart_table, "bn-learned", 0.8, [0], learner="zzz")

    def test_unknown_model_kind(self, heart_table):
        with pytest.raises(ValueError):
            run_experiment(heart_table, "zzz", 0.8, [0])

    def test_empty_seed_list_rejected(self, heart_table):
        with pytest.raises(ValueError):
            run_experiment(heart_table, "nb", 0.8, [])

    def test_json_serializable(self, heart_table):
        report = run_experiment(heart_table, "bn-paper", 0.8, [0])
        json.dumps(report)
