"""Probing labeled representations without training a classifier.

The probe clusters points bottom-up, merging only same-label clusters
and only when the merged hull can still be separated from every
other-label cluster by a margin. The final cluster count is the
finding:

  * clusters == labels: one region per label; a linear model suffices
  * clusters >  labels: some label is split into islands with other
    labels between them; the space encodes the distinction, but not
    linearly

Held-out points are scored by distance to the nearest cluster, so the
structure doubles as a nearest-region classifier.

Run:
    python3 demos/probe_walkthrough.py
"""
import numpy as np

from spectrobe import (
    LabeledPoint,
    PairTask,
    build_pairs,
    evaluate,
    run_directprobe,
)


def show(result, title: str) -> None:
    print(title)
    print(f"  converged: {result.converged}   merges: {len(result.merge_log)}")
    for position, cluster in enumerate(result.clusters):
        print(
            f"  cluster {position}: label {cluster.label!r}, "
            f"{len(cluster.member_indices)} points"
        )
    print()


def main() -> None:
    rng = np.random.default_rng(7)

    # XOR: same-label corners sit diagonally, so merging either diagonal
    # first blocks the other. Three clusters for two labels.
    xor = [
        LabeledPoint(np.array([0.0, 0.0]), "even"),
        LabeledPoint(np.array([1.0, 1.0]), "even"),
        LabeledPoint(np.array([0.0, 1.0]), "odd"),
        LabeledPoint(np.array([1.0, 0.0]), "odd"),
    ]
    show(run_directprobe(xor), "XOR corners (2 labels)")

    # Two well-separated Gaussian blobs: one cluster per label and a
    # held-out set scored by nearest cluster.
    centers = {"noun": np.array([0.0, 0.0, 0.0]), "verb": np.array([9.0, 0.0, 0.0])}
    train = [
        LabeledPoint(rng.normal(centers[label], 1.0), label)
        for label in centers
        for _ in range(40)
    ]
    heldout = [
        LabeledPoint(rng.normal(centers[label], 1.0), label)
        for label in centers
        for _ in range(20)
    ]
    result = run_directprobe(train)
    show(result, "separated blobs (2 labels)")
    outcome = evaluate(result, heldout)
    print(f"  held-out accuracy per label: {outcome.per_label}")
    print(f"  mean accuracy: {outcome.mean_accuracy:.3f}")
    print()

    # Building points from raw representation pairs: the distance task
    # subtracts paired vectors and keeps labels 2..6 only.
    reps = {f"w{i}": rng.normal(size=3) for i in range(10)}
    pairs = [
        ("w0", "w1", "2"),
        ("w2", "w3", "4"),
        ("w4", "w5", "6"),
        ("w6", "w7", "9"),
        ("w8", "w9", "12"),
    ]
    built = build_pairs(reps, pairs, PairTask.DISTANCE)
    print("distance pairs (labels beyond 6 are out of task scope):")
    print(f"  kept {len(built.points)} pairs, skipped {built.skipped}")
    print(f"  labels kept: {[p.label for p in built.points]}")


if __name__ == "__main__":
    main()
