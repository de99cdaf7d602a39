import numpy as np
import pytest

from helpers import random_rotation
from oracles import hulls_intersect
from spectrobe import (
    BuiltPairs,
    LabeledPoint,
    PairTask,
    ProbeResult,
    build_pairs,
    evaluate,
    predict,
    run_directprobe,
    separable,
)


def lp(vector, label):
    return LabeledPoint(np.asarray(vector, dtype=np.float64), label)


def xor_dataset():
    return [
        lp([0.0, 0.0], "a"),
        lp([1.0, 1.0], "a"),
        lp([0.0, 1.0], "b"),
        lp([1.0, 0.0], "b"),
    ]


def cluster_points(result, cluster):
    return np.stack([result.points[i].vector for i in cluster.member_indices])


def assert_probe_invariants(result):
    """Partition, purity, and pairwise cross-label separability."""
    seen = sorted(i for c in result.clusters for i in c.member_indices)
    assert seen == list(range(len(result.points)))
    for cluster in result.clusters:
        labels = {result.points[i].label for i in cluster.member_indices}
        assert labels == {cluster.label}
    for ia, ca in enumerate(result.clusters):
        for cb in result.clusters[ia + 1:]:
            if ca.label != cb.label:
                assert not hulls_intersect(
                    cluster_points(result, ca), cluster_points(result, cb)
                )


class TestSeparable:
    def test_distinct_singletons(self):
        assert separable(np.array([[0.0, 0.0]]), np.array([[1.0, 0.0]]))

    def test_point_inside_triangle(self):
        triangle = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])
        inside = np.array([[1.0, 1.0]])
        assert not separable(triangle, inside)

    def test_shared_point_is_inseparable(self):
        a = np.array([[0.0, 0.0], [1.0, 0.0]])
        b = np.array([[1.0, 0.0], [2.0, 5.0]])
        assert not separable(a, b)

    def test_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = rng.normal(size=(4, 3))
            b = rng.normal(size=(3, 3))
            assert separable(a, b) == separable(b, a)

    def test_rigid_motion_invariance(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            a = rng.normal(size=(4, 3))
            b = rng.normal(size=(4, 3)) + rng.choice([0.0, 4.0])
            rot = random_rotation(rng, 3)
            shift = rng.normal(size=3) * 10
            assert separable(a, b) == separable(a @ rot.T + shift, b @ rot.T + shift)

    def test_agrees_with_hull_intersection_oracle(self):
        rng = np.random.default_rng(444)
        disagreements = 0
        for _ in range(500):
            d = int(rng.integers(1, 4))
            a = rng.normal(size=(int(rng.integers(1, 7)), d))
            b = rng.normal(size=(int(rng.integers(1, 7)), d))
            if separable(a, b) != (not hulls_intersect(a, b)):
                disagreements += 1
        assert disagreements == 0

    def test_accepts_labeled_points(self):
        assert separable([lp([0.0], "x")], [lp([5.0], "y")])

    def test_validation(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            separable(np.zeros((1, 2)), np.zeros((1, 3)))
        with pytest.raises(ValueError):
            separable(np.zeros((0, 2)), np.zeros((1, 2)))
        with pytest.raises(ValueError, match="tolerance"):
            separable(np.zeros((1, 1)), np.ones((1, 1)), tolerance=0.0)
        with pytest.raises(ValueError, match="non-finite"):
            separable(np.array([[np.nan]]), np.ones((1, 1)))


class TestRunDirectprobe:
    def test_single_label_collapses_fully(self):
        rng = np.random.default_rng(14)
        dataset = [lp(rng.normal(size=3), "only") for _ in range(10)]
        result = run_directprobe(dataset)
        assert result.converged
        assert len(result.clusters) == 1
        assert len(result.merge_log) == 9
        assert result.clusters[0].member_indices == tuple(range(10))

    def test_xor_needs_three_clusters(self):
        result = run_directprobe(xor_dataset())
        assert result.converged
        assert len(result.clusters) == 3
        assert len(result.merge_log) == 1
        first = result.merge_log[0]
        assert (first.cluster_a, first.cluster_b) == (0, 1)
        assert first.distance == pytest.approx(np.sqrt(2.0))
        assert_probe_invariants(result)

    def test_well_separated_blobs_merge_per_label(self):
        rng = np.random.default_rng(15)
        blobs = {
            "a": [(0.0, 0.0), (0.0, 8.0)],
            "b": [(20.0, 0.0), (20.0, 8.0)],
        }
        dataset = []
        for label, centers in blobs.items():
            for cx, cy in centers:
                for _ in range(15):
                    dataset.append(
                        lp(rng.normal((cx, cy), 0.5), label)
                    )
        result = run_directprobe(dataset)
        assert result.converged
        assert sorted(c.label for c in result.clusters) == ["a", "b"]

    def test_determinism(self):
        rng = np.random.default_rng(16)
        dataset = [
            lp(rng.normal(size=2), rng.choice(["x", "y"])) for _ in range(20)
        ]
        first = run_directprobe(dataset)
        second = run_directprobe(dataset)
        assert first.merge_log == second.merge_log
        assert [c.member_indices for c in first.clusters] == [
            c.member_indices for c in second.clusters
        ]

    def test_random_datasets_keep_invariants(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            d = int(rng.integers(1, 5))
            labels = [f"l{k}" for k in range(int(rng.integers(1, 4)))]
            centers = {label: rng.normal(scale=3.0, size=d) for label in labels}
            dataset = [
                lp(rng.normal(centers[label], 1.0), label)
                for label in rng.choice(labels, size=int(rng.integers(2, 25)))
            ]
            result = run_directprobe(dataset)
            assert result.converged
            assert_probe_invariants(result)

    def test_budget_exhaustion_is_flagged(self):
        line = [lp([float(i)], "same") for i in range(3)]
        full = run_directprobe(line)
        assert full.converged and len(full.clusters) == 1
        cut = run_directprobe(line, merge_budget=1)
        assert not cut.converged
        assert len(cut.clusters) == 2
        with pytest.raises(ValueError, match="converge"):
            evaluate(cut, line)

    def test_zero_budget_with_no_candidates_still_converges(self):
        result = run_directprobe([lp([1.0], "a")], merge_budget=0)
        assert result.converged and len(result.clusters) == 1

    def test_zero_budget_with_candidates_does_not(self):
        result = run_directprobe(
            [lp([0.0], "a"), lp([1.0], "a")], merge_budget=0
        )
        assert not result.converged

    def test_validation(self):
        with pytest.raises(ValueError, match="empty"):
            run_directprobe([])
        with pytest.raises(ValueError, match="not a LabeledPoint"):
            run_directprobe([np.zeros(2)])
        with pytest.raises(ValueError, match="dimension"):
            run_directprobe([lp([0.0], "a"), lp([0.0, 1.0], "a")])
        with pytest.raises(ValueError, match="merge_budget"):
            run_directprobe([lp([0.0], "a")], merge_budget=-1)


class TestPredictEvaluate:
    def test_training_points_predict_their_own_label(self):
        result = run_directprobe(xor_dataset())
        for point in result.points:
            assert predict(result, point.vector) == point.label

    def test_tie_goes_to_earlier_cluster(self):
        result = run_directprobe([lp([0.0], "a"), lp([2.0], "b")])
        assert predict(result, np.array([1.0])) == "a"

    def test_query_validation(self):
        result = run_directprobe([lp([0.0, 0.0], "a")])
        with pytest.raises(ValueError):
            predict(result, np.array([1.0]))
        with pytest.raises(ValueError):
            predict(result, np.array([np.inf, 0.0]))

    def test_perfect_heldout(self):
        result = run_directprobe(xor_dataset())
        outcome = evaluate(result, xor_dataset())
        assert outcome.per_label == {"a": 1.0, "b": 1.0}
        assert outcome.mean_accuracy == 1.0
        assert outcome.unknown_labels == ()

    def test_swapped_labels_score_zero(self):
        result = run_directprobe([lp([0.0], "a"), lp([10.0], "b")])
        heldout = [lp([0.1], "b"), lp([9.9], "a")]
        outcome = evaluate(result, heldout)
        assert outcome.per_label == {"a": 0.0, "b": 0.0}
        assert outcome.mean_accuracy == 0.0

    def test_unknown_labels_count_as_wrong_and_are_listed(self):
        result = run_directprobe([lp([0.0], "a"), lp([10.0], "b")])
        heldout = [lp([0.1], "a"), lp([20.0], "zz")]
        outcome = evaluate(result, heldout)
        assert outcome.per_label == {"a": 1.0, "zz": 0.0}
        assert outcome.mean_accuracy == 0.5
        assert outcome.unknown_labels == ("zz",)

    def test_mean_is_unweighted_across_labels(self):
        result = run_directprobe([lp([0.0], "a"), lp([10.0], "b")])
        heldout = [lp([0.1], "a")] * 9 + [lp([0.2], "b")]
        outcome = evaluate(result, heldout)
        assert outcome.per_label == {"a": 1.0, "b": 0.0}
        assert outcome.mean_accuracy == 0.5

    def test_empty_heldout_rejected(self):
        result = run_directprobe([lp([0.0], "a")])
        with pytest.raises(ValueError, match="empty"):
            evaluate(result, [])


class TestBuildPairs:
    reps = {
        "t1": np.array([1.0, 2.0]),
        "t2": np.array([5.0, 3.0]),
        "t3": np.array([0.0, 1.0]),
    }

    def test_distance_subtracts(self):
        built = build_pairs(self.reps, [("t1", "t2", "3")], PairTask.DISTANCE)
        assert built.skipped == 0
        point = built.points[0]
        np.testing.assert_array_equal(point.vector, [-4.0, -1.0])
        assert point.label == "3"

    def test_distance_skips_far_pairs_and_counts_them(self):
        pairs = [
            ("t1", "t2", "2"),
            ("t1", "t3", "7"),
            ("t2", "t3", "8"),
            ("t1", "t2", "6"),
        ]
        built = build_pairs(self.reps, pairs, PairTask.DISTANCE)
        assert built.skipped == 2
        assert [p.label for p in built.points] == ["2", "6"]

    def test_distance_label_is_canonicalized(self):
        built = build_pairs(self.reps, [("t1", "t2", "03")], PairTask.DISTANCE)
        assert built.points[0].label == "3"

    def test_distance_rejects_bad_labels(self):
        with pytest.raises(ValueError, match="integer"):
            build_pairs(self.reps, [("t1", "t2", "near")], PairTask.DISTANCE)
        with pytest.raises(ValueError, match=">= 2"):
            build_pairs(self.reps, [("t1", "t2", "1")], PairTask.DISTANCE)

    def test_identical_tokens_give_zero_vector(self):
        built = build_pairs(self.reps, [("t1", "t1", "2")], PairTask.DISTANCE)
        np.testing.assert_array_equal(built.points[0].vector, [0.0, 0.0])

    def test_siblings_concatenates(self):
        built = build_pairs(self.reps, [("t1", "t2", "yes")], PairTask.SIBLINGS)
        np.testing.assert_array_equal(built.points[0].vector, [1.0, 2.0, 5.0, 3.0])
        assert built.points[0].label == "yes"

    def test_siblings_caps_distinct_labels_at_two(self):
        pairs = [("t1", "t2", "yes"), ("t1", "t3", "no"), ("t2", "t3", "maybe")]
        with pytest.raises(ValueError, match="at most 2"):
            build_pairs(self.reps, pairs, PairTask.SIBLINGS)

    def test_dfg_edge_caps_distinct_labels_at_three(self):
        ok = [("t1", "t2", "a"), ("t1", "t3", "b"), ("t2", "t3", "c")]
        built = build_pairs(self.reps, ok, PairTask.DFG_EDGE)
        assert len(built.points) == 3
        with pytest.raises(ValueError, match="at most 3"):
            build_pairs(self.reps, ok + [("t1", "t2", "d")], PairTask.DFG_EDGE)

    def test_unknown_token_id_is_named(self):
        with pytest.raises(ValueError, match="t9"):
            build_pairs(self.reps, [("t1", "t9", "2")], PairTask.DISTANCE)

    def test_representation_validation(self):
        with pytest.raises(ValueError, match="dimension"):
            build_pairs(
                {"a": np.ones(2), "b": np.ones(3)}, [("a", "b", "2")],
                PairTask.DISTANCE,
            )
        with pytest.raises(ValueError, match="non-finite"):
            build_pairs(
                {"a": np.array([np.nan]), "b": np.ones(1)}, [("a", "b", "2")],
                PairTask.DISTANCE,
            )
        with pytest.raises(ValueError, match="nonempty"):
            build_pairs(
                {"a": np.array([]), "b": np.ones(1)}, [("a", "b", "2")],
                PairTask.DISTANCE,
            )

    def test_returns_built_pairs_type(self):
        built = build_pairs(self.reps, [], PairTask.DISTANCE)
        assert isinstance(built, BuiltPairs)
        assert built.points == () and built.skipped == 0
