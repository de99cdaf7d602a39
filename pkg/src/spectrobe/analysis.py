"""Whole-model analysis: per-layer classification, forward/backward
complementarity, checkpoint diffing, and multi-kernel redundancy."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .classify import Categorization, FilterClass, categorize
from .config import DEFAULT_CONFIG, RunConfig
from .spectral import (
    DegenerateKernelError,
    Direction,
    Kernel,
    SpectralSummary,
    compute_spectrum,
    summarize,
)

_DIRECTIONS = (Direction.FORWARD, Direction.BACKWARD)
_CLASS_ORDER = {
    FilterClass.LOW_PASS: 0,
    FilterClass.BAND_PASS: 1,
    FilterClass.HIGH_PASS: 2,
}


@dataclass(frozen=True, eq=False)
class KernelBundle:
    """Every kernel of one model, indexed by layer and direction.

    Layers run contiguously from 1 and each carries both directions with
    the same number of kernels; all kernels share one length. Each
    kernel's own metadata must match its slot.
    """

    model_tag: str
    layers: dict[int, dict[Direction, tuple[Kernel, ...]]]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("bundle has no layers")
        indices = sorted(self.layers)
        if indices != list(range(1, len(indices) + 1)):
            raise ValueError(
                f"layer indices must be contiguous from 1, got {indices}"
            )
        length = None
        per_direction = None
        normalized: dict[int, dict[Direction, tuple[Kernel, ...]]] = {}
        for layer in indices:
            slot = dict(self.layers[layer])
            extra = set(slot) - set(_DIRECTIONS)
            if extra:
                raise ValueError(f"layer {layer} has unexpected direction keys {extra}")
            row: dict[Direction, tuple[Kernel, ...]] = {}
            for direction in _DIRECTIONS:
                if direction not in slot or not slot[direction]:
                    raise ValueError(
                        f"layer {layer} is missing {direction.value} kernels"
                    )
                kernels = tuple(sorted(slot[direction], key=lambda k: k.kernel_index))
                got = [k.kernel_index for k in kernels]
                if got != list(range(len(kernels))):
                    raise ValueError(
                        f"layer {layer} {direction.value}: kernel_index values "
                        f"must be 0..{len(kernels) - 1} without gaps, got {got}"
                    )
                for kernel in kernels:
                    if kernel.layer != layer or kernel.direction is not direction:
                        raise ValueError(
                            f"kernel tagged layer {kernel.layer} "
                            f"{kernel.direction.value} placed at layer {layer} "
                            f"{direction.value}"
                        )
                    if length is None:
                        length = kernel.length
                    elif kernel.length != length:
                        raise ValueError(
                            f"kernel lengths differ: {kernel.length} vs {length}"
                        )
                if per_direction is None:
                    per_direction = len(kernels)
                elif len(kernels) != per_direction:
                    raise ValueError(
                        f"layer {layer} {direction.value} has {len(kernels)} kernels, "
                        f"expected {per_direction}"
                    )
                row[direction] = kernels
            normalized[layer] = row
        object.__setattr__(self, "layers", normalized)

    @classmethod
    def from_kernels(cls, model_tag: str, kernels) -> "KernelBundle":
        """Group loose kernels into a bundle by their own metadata."""
        grouped: dict[int, dict[Direction, list[Kernel]]] = {}
        for kernel in kernels:
            slot = grouped.setdefault(kernel.layer, {d: [] for d in _DIRECTIONS})
            slot[kernel.direction].append(kernel)
        layers = {
            layer: {d: tuple(ks) for d, ks in slot.items() if ks}
            for layer, slot in grouped.items()
        }
        return cls(model_tag, layers)

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    @property
    def length(self) -> int:
        return self.layers[1][Direction.FORWARD][0].length

    @property
    def kernel_count_per_direction(self) -> int:
        return len(self.layers[1][Direction.FORWARD])

    def iter_kernels(self) -> Iterator[Kernel]:
        """All kernels ordered by (layer, forward-then-backward, index)."""
        for layer in sorted(self.layers):
            for direction in _DIRECTIONS:
                yield from self.layers[layer][direction]


@dataclass(frozen=True, slots=True)
class KernelAnalysis:
    """Metrics and verdicts for one kernel; empty when it was all-zero."""

    layer: int
    direction: Direction
    kernel_index: int
    summary: SpectralSummary | None
    categorization: Categorization | None
    degenerate: bool = False


@dataclass(frozen=True, slots=True)
class LayerReport:
    layer: int
    entries: tuple[KernelAnalysis, ...]


class Complementarity(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class LayerComplementarity:
    layer: int
    strength: Complementarity
    forward_class: FilterClass | None
    backward_class: FilterClass | None


@dataclass(frozen=True, slots=True)
class ComplementarityReport:
    layers: tuple[LayerComplementarity, ...]


@dataclass(frozen=True, slots=True)
class ShiftEntry:
    layer: int
    direction: Direction
    kernel_index: int
    sc_before: float
    sc_after: float
    delta_sc: float
    class_before: FilterClass | None
    class_after: FilterClass | None
    shifted_high: bool


@dataclass(frozen=True, slots=True)
class ShiftReport:
    """Per-kernel centroid movement between two checkpoints.

    ``flagged_early_layers`` lists layers in the first half of the stack
    whose forward kernel shifted toward high frequencies.
    """

    entries: tuple[ShiftEntry, ...]
    flagged_early_layers: tuple[int, ...]
    shift_threshold: float


@dataclass(frozen=True, slots=True)
class RedundancyPair:
    layer: int
    direction: Direction
    kernel_index_a: int
    kernel_index_b: int
    similarity: float
    redundant: bool


def analyze_bundle(
    bundle: KernelBundle, config: RunConfig | None = None
) -> list[LayerReport]:
    """Spectral summary and categorization for every kernel, layer by layer.

    All-zero kernels cannot be classified; their entries are marked
    degenerate and the rest of the bundle is still analyzed.
    """
    cfg = config or DEFAULT_CONFIG
    reports = []
    for layer in sorted(bundle.layers):
        entries = []
        for direction in _DIRECTIONS:
            for kernel in bundle.layers[layer][direction]:
                spectrum = compute_spectrum(kernel)
                try:
                    summary = summarize(
                        spectrum,
                        low_fraction=cfg.low_band_fraction,
                        high_fraction=cfg.high_band_fraction,
                    )
                except DegenerateKernelError:
                    entries.append(
                        KernelAnalysis(layer, direction, kernel.kernel_index,
                                       None, None, degenerate=True)
                    )
                    continue
                verdict = categorize(
                    summary,
                    sc_low_bound=cfg.sc_low_bound,
                    sc_high_bound=cfg.sc_high_bound,
                    lhfr_low_pass_min=cfg.lhfr_low_pass_min,
                    lhfr_high_pass_max=cfg.lhfr_high_pass_max,
                )
                entries.append(
                    KernelAnalysis(layer, direction, kernel.kernel_index,
                                   summary, verdict)
                )
        reports.append(LayerReport(layer, tuple(entries)))
    return reports


def _pair_strength(
    forward: FilterClass | None, backward: FilterClass | None
) -> Complementarity:
    if forward is None or backward is None:
        return Complementarity.NONE
    if {forward, backward} == {FilterClass.LOW_PASS, FilterClass.HIGH_PASS}:
        return Complementarity.STRICT
    if (forward is FilterClass.BAND_PASS) != (backward is FilterClass.BAND_PASS):
        return Complementarity.WEAK
    return Complementarity.NONE


def detect_complementary(reports: Sequence[LayerReport]) -> ComplementarityReport:
    """Per-layer forward/backward complementarity from layer reports.

    STRICT means the pair spans both extremes (one low-pass, one
    high-pass); WEAK means exactly one side is band-pass; everything
    else, outliers and degenerate kernels included, is NONE. Defined only
    for single-kernel layers; multi-kernel layers belong to
    analyze_redundancy.
    """
    rows = []
    for report in sorted(reports, key=lambda r: r.layer):
        forward = [e for e in report.entries if e.direction is Direction.FORWARD]
        backward = [e for e in report.entries if e.direction is Direction.BACKWARD]
        if len(forward) != 1 or len(backward) != 1:
            raise ValueError(
                f"layer {report.layer} has several kernels per direction; "
                "complementarity needs exactly one, use analyze_redundancy"
            )
        fc = forward[0].categorization.combined if forward[0].categorization else None
        bc = backward[0].categorization.combined if backward[0].categorization else None
        rows.append(
            LayerComplementarity(report.layer, _pair_strength(fc, bc), fc, bc)
        )
    return ComplementarityReport(tuple(rows))


def _check_same_topology(before: KernelBundle, after: KernelBundle) -> None:
    if before.layer_count != after.layer_count:
        raise ValueError(
            f"layer counts differ: {before.layer_count} vs {after.layer_count}"
        )
    if before.length != after.length:
        raise ValueError(
            f"kernel lengths differ: {before.length} vs {after.length}"
        )
    for layer in sorted(before.layers):
        for direction in _DIRECTIONS:
            nb = len(before.layers[layer][direction])
            na = len(after.layers[layer][direction])
            if nb != na:
                raise ValueError(
                    f"layer {layer} {direction.value}: kernel counts differ "
                    f"({nb} vs {na})"
                )


def diff_bundles(
    before: KernelBundle, after: KernelBundle, config: RunConfig | None = None
) -> ShiftReport:
    """Centroid movement of every kernel between two same-topology bundles.

    A kernel counts as shifted high when its centroid moved up by more
    than the threshold, or its combined class climbed the low < band <
    high order (which catches transitions smaller than the threshold).
    Kernels must carry energy in both checkpoints.
    """
    cfg = config or DEFAULT_CONFIG
    _check_same_topology(before, after)

    def classed_centroid(kernel: Kernel) -> tuple[float, FilterClass | None]:
        summary = summarize(
            compute_spectrum(kernel),
            low_fraction=cfg.low_band_fraction,
            high_fraction=cfg.high_band_fraction,
        )
        verdict = categorize(
            summary,
            sc_low_bound=cfg.sc_low_bound,
            sc_high_bound=cfg.sc_high_bound,
            lhfr_low_pass_min=cfg.lhfr_low_pass_min,
            lhfr_high_pass_max=cfg.lhfr_high_pass_max,
        )
        return summary.centroid, verdict.combined

    entries = []
    for kb, ka in zip(before.iter_kernels(), after.iter_kernels()):
        sc_b, class_b = classed_centroid(kb)
        sc_a, class_a = classed_centroid(ka)
        delta = sc_a - sc_b
        climbed = (
            class_b is not None
            and class_a is not None
            and _CLASS_ORDER[class_a] > _CLASS_ORDER[class_b]
        )
        entries.append(
            ShiftEntry(
                layer=kb.layer,
                direction=kb.direction,
                kernel_index=kb.kernel_index,
                sc_before=sc_b,
                sc_after=sc_a,
                delta_sc=delta,
                class_before=class_b,
                class_after=class_a,
                shifted_high=delta > cfg.shift_threshold or climbed,
            )
        )
    early_limit = (before.layer_count + 1) // 2
    flagged = tuple(
        sorted(
            {
                e.layer
                for e in entries
                if e.shifted_high
                and e.direction is Direction.FORWARD
                and e.layer <= early_limit
            }
        )
    )
    return ShiftReport(tuple(entries), flagged, cfg.shift_threshold)


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def analyze_redundancy(
    bundle: KernelBundle, config: RunConfig | None = None
) -> list[RedundancyPair]:
    """Cosine similarity of magnitude spectra for every same-slot kernel pair.

    Covers each layer and direction with at least two kernels; pairs at or
    above the cutoff are flagged redundant, but every pair is returned
    with its similarity. Cosine over magnitudes is scale-invariant and
    insensitive to time shifts of the kernels.
    """
    cfg = config or DEFAULT_CONFIG
    if bundle.kernel_count_per_direction < 2:
        raise ValueError(
            "bundle has a single kernel per direction; nothing to compare"
        )
    pairs = []
    for layer in sorted(bundle.layers):
        for direction in _DIRECTIONS:
            kernels = bundle.layers[layer][direction]
            spectra = [compute_spectrum(k).magnitudes for k in kernels]
            for ia, ib in combinations(range(len(kernels)), 2):
                similarity = _cosine(spectra[ia], spectra[ib])
                pairs.append(
                    RedundancyPair(
                        layer=layer,
                        direction=direction,
                        kernel_index_a=kernels[ia].kernel_index,
                        kernel_index_b=kernels[ib].kernel_index,
                        similarity=similarity,
                        redundant=similarity >= cfg.redundancy_cutoff,
                    )
                )
    return pairs
