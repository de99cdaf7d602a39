"""Classifier-free probing of labeled representation pairs.

Points start as singleton clusters. Same-label clusters merge greedily,
nearest centroids first, but a merge only commits when the merged point
set stays linearly separable from every cluster of a different label.
What survives is a set of pure, mutually separable clusters that doubles
as a nearest-cluster classifier for held-out points.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import linprog

from .spectral import FloatArray

SEPARABILITY_TOLERANCE = 1e-6


@dataclass(frozen=True, slots=True, eq=False)
class LabeledPoint:
    """One representation vector with its relational label."""

    vector: FloatArray
    label: str

    def __post_init__(self):
        arr = np.asarray(self.vector, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError(f"vector must be 1-D and nonempty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("vector contains a non-finite value")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "vector", arr)
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("label must be a nonempty string")

    @property
    def dimension(self) -> int:
        return int(self.vector.size)


@dataclass(frozen=True, slots=True, eq=False)
class Cluster:
    member_indices: tuple[int, ...]
    label: str
    centroid: FloatArray


@dataclass(frozen=True, slots=True)
class MergeRecord:
    """One committed merge: the two cluster ids and their centroid distance.

    Ids count up from the singletons (point i starts as cluster i); each
    merge mints the next id for its result.
    """

    cluster_a: int
    cluster_b: int
    distance: float


@dataclass(frozen=True, slots=True, eq=False)
class ProbeResult:
    """Final clustering over the training points.

    ``converged`` is False when the merge-attempt budget ran out first;
    such a result must not be used for evaluation. Clusters are ordered
    by their smallest member index.
    """

    points: tuple[LabeledPoint, ...]
    clusters: tuple[Cluster, ...]
    merge_log: tuple[MergeRecord, ...]
    converged: bool

    @property
    def dimension(self) -> int:
        return self.points[0].dimension


class PairTask(enum.Enum):
    """How a token pair becomes one vector, and which labels are legal.

    DISTANCE subtracts the two representations and keeps only tree
    distances 2 through 6, dropping longer ones. SIBLINGS and DFG_EDGE
    concatenate the representations; they allow at most two and three
    distinct labels respectively.
    """

    DISTANCE = "distance"
    SIBLINGS = "siblings"
    DFG_EDGE = "dfg_edge"


@dataclass(frozen=True, slots=True)
class BuiltPairs:
    points: tuple[LabeledPoint, ...]
    skipped: int


@dataclass(frozen=True, slots=True)
class EvalResult:
    """Per-label and unweighted mean accuracy over a held-out set.

    Labels that never occur in training are listed in ``unknown_labels``;
    their points count as wrong, which is what nearest-cluster prediction
    does to them anyway.
    """

    per_label: dict[str, float]
    mean_accuracy: float
    unknown_labels: tuple[str, ...]


def _as_point_matrix(points, name: str) -> FloatArray:
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
    else:
        rows = [
            p.vector if isinstance(p, LabeledPoint) else np.asarray(p, dtype=np.float64)
            for p in points
        ]
        if not rows:
            raise ValueError(f"{name} is empty")
        arr = np.stack(rows).astype(np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be a nonempty set of vectors")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains a non-finite value")
    return arr


def _best_margin(a: FloatArray, b: FloatArray) -> float:
    """Largest t such that some w in [-1, 1]^d, offset b0 satisfy
    x.w <= b0 - t on one side and x.w >= b0 + t on the other."""
    na, d = a.shape
    nb = b.shape[0]
    # variables: w (d), b0, t
    a_ub = np.zeros((na + nb, d + 2))
    a_ub[:na, :d] = a
    a_ub[:na, d] = -1.0
    a_ub[:na, d + 1] = 1.0
    a_ub[na:, :d] = -b
    a_ub[na:, d] = 1.0
    a_ub[na:, d + 1] = 1.0
    cost = np.zeros(d + 2)
    cost[d + 1] = -1.0
    bounds = [(-1.0, 1.0)] * d + [(None, None), (0.0, None)]
    res = linprog(cost, A_ub=a_ub, b_ub=np.zeros(na + nb), bounds=bounds,
                  method="highs")
    if not res.success:
        raise RuntimeError(f"separability program failed: {res.message}")
    return float(res.x[d + 1])


def separable(set_a, set_b, *, tolerance: float = SEPARABILITY_TOLERANCE) -> bool:
    """True iff a hyperplane strictly separates the two point sets.

    Equivalent to their convex hulls being disjoint. Decided by the
    maximal separating margin: separable when it exceeds ``tolerance``.
    Symmetric in its arguments.
    """
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    a = _as_point_matrix(set_a, "set_a")
    b = _as_point_matrix(set_b, "set_b")
    if a.shape[1] != b.shape[1]:
        raise ValueError(
            f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}"
        )
    # a single-coordinate gap certifies a margin of half the gap without
    # touching the solver; never used to declare inseparability
    gap = np.maximum(b.min(axis=0) - a.max(axis=0), a.min(axis=0) - b.max(axis=0))
    if float(gap.max(initial=-np.inf)) > 2.0 * tolerance:
        return True
    return _best_margin(a, b) > tolerance


def run_directprobe(
    dataset: Sequence[LabeledPoint],
    *,
    tolerance: float = SEPARABILITY_TOLERANCE,
    merge_budget: int | None = None,
) -> ProbeResult:
    """Constrained agglomerative clustering of the dataset.

    Each step takes the same-label cluster pair with the smallest centroid
    distance (ties broken toward lower cluster ids) and merges it if the
    union stays separable from every different-label cluster; otherwise
    the pair is set aside. Different-label hulls only ever grow, so a
    rejected pair can never become mergeable again and is not retried.
    The loop ends when no candidate pair remains, or once ``merge_budget``
    candidate evaluations (default 10 * n^2) have been spent, in which
    case the result is flagged as not converged.
    """
    points = tuple(dataset)
    if not points:
        raise ValueError("dataset is empty")
    for i, p in enumerate(points):
        if not isinstance(p, LabeledPoint):
            raise ValueError(f"dataset[{i}] is not a LabeledPoint")
    dim = points[0].dimension
    for i, p in enumerate(points):
        if p.dimension != dim:
            raise ValueError(
                f"dataset[{i}] has dimension {p.dimension}, expected {dim}"
            )
    n = len(points)
    if merge_budget is None:
        merge_budget = 10 * n * n
    if merge_budget < 0:
        raise ValueError(f"merge_budget must be nonnegative, got {merge_budget}")

    x = np.stack([p.vector for p in points])
    members: dict[int, tuple[int, ...]] = {i: (i,) for i in range(n)}
    label_of: dict[int, str] = {i: points[i].label for i in range(n)}
    centroid: dict[int, FloatArray] = {i: x[i] for i in range(n)}

    def push_pair(heap, ia, ib):
        d = float(np.linalg.norm(centroid[ia] - centroid[ib]))
        heapq.heappush(heap, (d, ia, ib))

    heap: list[tuple[float, int, int]] = []
    for ia in range(n):
        for ib in range(ia + 1, n):
            if label_of[ia] == label_of[ib]:
                push_pair(heap, ia, ib)

    blocked: set[tuple[int, int]] = set()
    log: list[MergeRecord] = []
    next_id = n
    attempts = 0
    converged = True

    while heap:
        dist, ia, ib = heapq.heappop(heap)
        if ia not in members or ib not in members or (ia, ib) in blocked:
            continue
        if attempts >= merge_budget:
            converged = False
            break
        attempts += 1
        merged = tuple(sorted(members[ia] + members[ib]))
        merged_points = x[list(merged)]
        ok = all(
            separable(merged_points, x[list(members[other])], tolerance=tolerance)
            for other in members
            if label_of[other] != label_of[ia]
        )
        if not ok:
            blocked.add((ia, ib))
            continue
        del members[ia], members[ib]
        cid = next_id
        next_id += 1
        members[cid] = merged
        label_of[cid] = label_of[ia]
        centroid[cid] = x[list(merged)].mean(axis=0)
        log.append(MergeRecord(ia, ib, dist))
        for other in members:
            if other != cid and label_of[other] == label_of[cid]:
                push_pair(heap, other, cid)

    order = sorted(members, key=lambda cid: members[cid][0])
    clusters = tuple(
        Cluster(members[cid], label_of[cid], x[list(members[cid])].mean(axis=0))
        for cid in order
    )
    return ProbeResult(points, clusters, tuple(log), converged)


def predict(result: ProbeResult, query) -> str:
    """Label of the cluster nearest to the query.

    Distance to a cluster is the minimum Euclidean distance to any of its
    member points; ties go to the lower-indexed cluster.
    """
    if not result.clusters:
        raise ValueError("result has no clusters")
    q = np.asarray(query, dtype=np.float64)
    if q.ndim != 1 or q.size != result.dimension:
        raise ValueError(
            f"query must be a vector of dimension {result.dimension}"
        )
    if not np.all(np.isfinite(q)):
        raise ValueError("query contains a non-finite value")
    x = np.stack([p.vector for p in result.points])
    best_d = np.inf
    best = None
    for cluster in result.clusters:
        d = float(np.linalg.norm(x[list(cluster.member_indices)] - q, axis=1).min())
        if d < best_d:
            best_d, best = d, cluster
    return best.label


def evaluate(result: ProbeResult, heldout: Sequence[LabeledPoint]) -> EvalResult:
    """Nearest-cluster accuracy per label plus the unweighted label mean."""
    heldout = tuple(heldout)
    if not heldout:
        raise ValueError("held-out set is empty")
    if not result.converged:
        raise ValueError("result did not converge and is excluded from evaluation")
    trained = {c.label for c in result.clusters}
    totals: dict[str, int] = {}
    correct: dict[str, int] = {}
    for point in heldout:
        totals[point.label] = totals.get(point.label, 0) + 1
        if predict(result, point.vector) == point.label:
            correct[point.label] = correct.get(point.label, 0) + 1
    per_label = {
        label: correct.get(label, 0) / count for label, count in sorted(totals.items())
    }
    mean = sum(per_label.values()) / len(per_label)
    unknown = tuple(sorted(label for label in totals if label not in trained))
    return EvalResult(per_label=per_label, mean_accuracy=mean, unknown_labels=unknown)


_MAX_DISTINCT_LABELS = {PairTask.SIBLINGS: 2, PairTask.DFG_EDGE: 3}
DISTANCE_MIN = 2
DISTANCE_MAX = 6


def build_pairs(
    representations: Mapping[str, "np.ndarray"],
    pairs: Sequence[tuple[str, str, str]],
    task: PairTask,
) -> BuiltPairs:
    """Turn labeled token-id pairs into labeled vectors for probing.

    DISTANCE points are the difference of the two representations; the
    label must parse as an integer tree distance of at least 2, and
    distances above 6 are dropped (the skip count says how many).
    SIBLINGS and DFG_EDGE points concatenate the representations and cap
    the distinct label count at 2 and 3 respectively.
    """
    vectors: dict[str, FloatArray] = {}
    dim = None
    for token_id, rep in representations.items():
        arr = np.asarray(rep, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError(f"representation {token_id!r} must be a nonempty vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"representation {token_id!r} has a non-finite value")
        if dim is None:
            dim = arr.size
        elif arr.size != dim:
            raise ValueError(
                f"representation {token_id!r} has dimension {arr.size}, expected {dim}"
            )
        vectors[token_id] = arr

    points: list[LabeledPoint] = []
    skipped = 0
    seen_labels: set[str] = set()
    for id_i, id_j, label in pairs:
        for token_id in (id_i, id_j):
            if token_id not in vectors:
                raise ValueError(f"unknown token id {token_id!r}")
        if task is PairTask.DISTANCE:
            try:
                distance = int(label)
            except ValueError:
                raise ValueError(
                    f"label {label!r} is not an integer tree distance"
                ) from None
            if distance < DISTANCE_MIN:
                raise ValueError(
                    f"tree distance must be >= {DISTANCE_MIN}, got {distance}"
                )
            if distance > DISTANCE_MAX:
                skipped += 1
                continue
            points.append(
                LabeledPoint(vectors[id_i] - vectors[id_j], str(distance))
            )
        else:
            seen_labels.add(label)
            cap = _MAX_DISTINCT_LABELS[task]
            if len(seen_labels) > cap:
                raise ValueError(
                    f"{task.value} allows at most {cap} distinct labels; "
                    f"got {sorted(seen_labels)}"
                )
            points.append(
                LabeledPoint(np.concatenate([vectors[id_i], vectors[id_j]]), label)
            )
    return BuiltPairs(tuple(points), skipped)
