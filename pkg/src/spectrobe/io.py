"""File formats and structured reports.

A kernel bundle is a directory: manifest.json plus one raw little-endian
float32 payload per kernel. A pair dataset is a directory: manifest.json,
a row-major float32 matrix of representations, and a text file of
"id_i id_j label" lines. Reports are JSON with sorted keys and stable
formatting, so identical inputs produce identical bytes. All writes land
via a temp file and rename.
"""
from __future__ import annotations

import dataclasses
import enum
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .analysis import (
    ComplementarityReport,
    KernelBundle,
    LayerReport,
    RedundancyPair,
    ShiftReport,
)
from .kernels import S4DParams
from .probe import BuiltPairs, EvalResult, ProbeResult
from .spectral import Direction, FloatArray, Kernel

_PAYLOAD_DTYPE = "<f4"


class FormatError(ValueError):
    """A file does not match its documented format."""


def _atomic_write_bytes(path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _atomic_write_text(path, text: str) -> None:
    _atomic_write_bytes(path, text.encode("utf-8"))


def _require(mapping, key, kind, where):
    if not isinstance(mapping, dict):
        raise FormatError(f"{where}: expected a JSON object")
    if key not in mapping:
        raise FormatError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is int:
        # bool is an int subclass; a manifest saying "true" is still wrong
        if isinstance(value, bool) or not isinstance(value, int):
            raise FormatError(f"{where}: field {key!r} must be an integer")
    elif not isinstance(value, kind):
        raise FormatError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _load_json(path) -> object:
    path = Path(path)
    if not path.is_file():
        raise FormatError(f"{path}: file not found")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def _read_payload(path: Path, expected_count: int) -> FloatArray:
    if not path.is_file():
        raise FormatError(f"{path}: missing payload file")
    data = path.read_bytes()
    expected_bytes = expected_count * 4
    if len(data) != expected_bytes:
        raise FormatError(
            f"{path}: expected {expected_bytes} bytes "
            f"({expected_count} float32 values), got {len(data)}"
        )
    values = np.frombuffer(data, dtype=_PAYLOAD_DTYPE).astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise FormatError(f"{path}: non-finite value at element {bad[0]}")
    return values


def write_bundle(bundle: KernelBundle, path) -> None:
    """Write a bundle directory; payloads are quantized to float32."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    entries = []
    for kernel in bundle.iter_kernels():
        rel = (
            f"layer{kernel.layer:03d}_{kernel.direction.value}"
            f"_k{kernel.kernel_index:02d}.f32"
        )
        payload = np.asarray(kernel.values, dtype=_PAYLOAD_DTYPE).tobytes()
        _atomic_write_bytes(root / rel, payload)
        entries.append(
            {
                "layer": kernel.layer,
                "direction": kernel.direction.value,
                "kernel_index": kernel.kernel_index,
                "path": rel,
                "element_count": kernel.length,
            }
        )
    manifest = {
        "model_tag": bundle.model_tag,
        "N": bundle.length,
        "layer_count": bundle.layer_count,
        "kernels": entries,
    }
    _atomic_write_text(
        root / "manifest.json",
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )


def read_bundle(path) -> KernelBundle:
    """Read a bundle directory back into a KernelBundle, bit-exactly."""
    root = Path(path)
    mpath = root / "manifest.json"
    manifest = _load_json(mpath)
    model_tag = _require(manifest, "model_tag", str, mpath)
    n = _require(manifest, "N", int, mpath)
    layer_count = _require(manifest, "layer_count", int, mpath)
    entries = _require(manifest, "kernels", list, mpath)
    kernels = []
    for i, entry in enumerate(entries):
        where = f"{mpath}: kernels[{i}]"
        layer = _require(entry, "layer", int, where)
        direction_name = _require(entry, "direction", str, where)
        try:
            direction = Direction(direction_name)
        except ValueError:
            raise FormatError(
                f"{where}: direction must be forward or backward, "
                f"got {direction_name!r}"
            ) from None
        kernel_index = _require(entry, "kernel_index", int, where)
        rel = _require(entry, "path", str, where)
        element_count = _require(entry, "element_count", int, where)
        if element_count != n:
            raise FormatError(
                f"{where}: element_count {element_count} does not match N={n}"
            )
        values = _read_payload(root / rel, element_count)
        kernels.append(
            Kernel(values, layer=layer, direction=direction,
                   kernel_index=kernel_index, tag=model_tag)
        )
    try:
        bundle = KernelBundle.from_kernels(model_tag, kernels)
    except ValueError as exc:
        raise FormatError(f"{mpath}: {exc}") from exc
    if bundle.layer_count != layer_count:
        raise FormatError(
            f"{mpath}: layer_count says {layer_count} but entries span "
            f"{bundle.layer_count} layers"
        )
    return bundle


def _check_token_id(token_id, where) -> str:
    if not isinstance(token_id, str) or not token_id:
        raise FormatError(f"{where}: token ids must be nonempty strings")
    if any(ch.isspace() for ch in token_id):
        raise FormatError(f"{where}: token id {token_id!r} contains whitespace")
    return token_id


def write_pair_dataset(
    representations: Mapping[str, "np.ndarray"],
    pairs: Sequence[tuple[str, str, str]],
    path,
) -> None:
    """Write a pair-dataset directory.

    Token ids must be whitespace-free; labels must be nonempty, with no
    newlines and no leading or trailing blanks, so the text format stays
    unambiguous.
    """
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    ids = []
    rows = []
    dim = None
    for token_id, rep in representations.items():
        _check_token_id(token_id, root)
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
        ids.append(token_id)
        rows.append(arr)
    if not ids:
        raise ValueError("dataset needs at least one representation")
    lines = []
    for i, (id_i, id_j, label) in enumerate(pairs):
        for token_id in (id_i, id_j):
            if token_id not in representations:
                raise ValueError(f"pairs[{i}]: unknown token id {token_id!r}")
        if not label or label != label.strip() or "\n" in label:
            raise ValueError(
                f"pairs[{i}]: label {label!r} must be nonempty with no "
                "surrounding whitespace"
            )
        lines.append(f"{id_i} {id_j} {label}")
    matrix = np.stack(rows).astype(_PAYLOAD_DTYPE)
    manifest = {"count": len(ids), "dimension": int(dim), "token_ids": ids}
    _atomic_write_text(
        root / "manifest.json",
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )
    _atomic_write_bytes(root / "vectors.f32", matrix.tobytes())
    _atomic_write_text(root / "pairs.txt", "".join(line + "\n" for line in lines))


def read_pair_dataset(path) -> tuple[dict[str, FloatArray], list[tuple[str, str, str]]]:
    """Read a pair-dataset directory: (representations, labeled id pairs)."""
    root = Path(path)
    mpath = root / "manifest.json"
    manifest = _load_json(mpath)
    count = _require(manifest, "count", int, mpath)
    dim = _require(manifest, "dimension", int, mpath)
    ids = _require(manifest, "token_ids", list, mpath)
    if len(ids) != count:
        raise FormatError(
            f"{mpath}: count says {count} but token_ids lists {len(ids)}"
        )
    if dim < 1:
        raise FormatError(f"{mpath}: dimension must be >= 1, got {dim}")
    seen = set()
    for token_id in ids:
        _check_token_id(token_id, mpath)
        if token_id in seen:
            raise FormatError(f"{mpath}: duplicate token id {token_id!r}")
        seen.add(token_id)
    vpath = root / "vectors.f32"
    flat = _read_payload(vpath, count * dim)
    matrix = flat.reshape(count, dim)
    representations = {token_id: matrix[i] for i, token_id in enumerate(ids)}
    ppath = root / "pairs.txt"
    if not ppath.is_file():
        raise FormatError(f"{ppath}: missing pair list")
    pairs = []
    for lineno, line in enumerate(ppath.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split(maxsplit=2)
        if len(parts) != 3:
            raise FormatError(
                f"{ppath}:{lineno}: expected 'id_i id_j label', got {line!r}"
            )
        id_i, id_j, label = parts
        for token_id in (id_i, id_j):
            if token_id not in representations:
                raise FormatError(
                    f"{ppath}:{lineno}: unknown token id {token_id!r}"
                )
        pairs.append((id_i, id_j, label))
    return representations, pairs


@dataclass(frozen=True, slots=True)
class ParamsEntry:
    """One kernel's state-space parameters and its slot in the model."""

    layer: int
    direction: Direction
    kernel_index: int
    params: S4DParams


def _mode_part(mode, key, where) -> complex:
    value = _require(mode, key, list, where)
    if len(value) != 2 or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise FormatError(f"{where}: field {key!r} must be [real, imag]")
    return complex(value[0], value[1])


def read_s4d_params(path) -> tuple[str, list[ParamsEntry]]:
    """Read a state-space parameter file.

    JSON layout: {"model_tag": ..., "step": ..., "layers": [{"layer": 1,
    "forward": [{"modes": [{"a": [re, im], "c": [re, im]}, ...],
    "step": ...}, ...], "backward": [...]}, ...]}. The per-kernel step is
    optional and falls back to the file-level one.
    """
    path = Path(path)
    data = _load_json(path)
    model_tag = _require(data, "model_tag", str, path)
    default_step = data.get("step")
    layers = _require(data, "layers", list, path)
    entries = []
    for li, layer_spec in enumerate(layers):
        where_layer = f"{path}: layers[{li}]"
        layer = _require(layer_spec, "layer", int, where_layer)
        for direction in (Direction.FORWARD, Direction.BACKWARD):
            kernel_specs = _require(layer_spec, direction.value, list, where_layer)
            for ki, kernel_spec in enumerate(kernel_specs):
                where = f"{where_layer}.{direction.value}[{ki}]"
                step = kernel_spec.get("step", default_step)
                if step is None:
                    raise FormatError(
                        f"{where}: no step given and no file-level default"
                    )
                modes = _require(kernel_spec, "modes", list, where)
                poles = []
                coefficients = []
                for mi, mode in enumerate(modes):
                    where_mode = f"{where}.modes[{mi}]"
                    poles.append(_mode_part(mode, "a", where_mode))
                    coefficients.append(_mode_part(mode, "c", where_mode))
                try:
                    params = S4DParams(
                        np.asarray(poles, dtype=np.complex128),
                        np.asarray(coefficients, dtype=np.complex128),
                        float(step),
                    )
                except ValueError as exc:
                    raise FormatError(f"{where}: {exc}") from exc
                entries.append(ParamsEntry(layer, direction, ki, params))
    return model_tag, entries


def _jsonable(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: _jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, float):
        if math.isinf(value):
            return "infinite" if value > 0 else "-infinite"
        if math.isnan(value):
            return None
        return value
    if isinstance(value, np.floating):
        return _jsonable(float(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def emit_report(report, path=None) -> str:
    """Serialize a report to deterministic JSON; optionally write it.

    Dataclasses and enums flatten to plain objects and value strings;
    infinities become the string "infinite" so the output stays valid
    JSON. Keys are sorted and floats use their shortest exact repr, which
    makes equal reports byte-identical.
    """
    payload = _jsonable(report)
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if path is not None:
        _atomic_write_text(path, text)
    return text


def analysis_payload(bundle: KernelBundle, reports: Sequence[LayerReport]) -> dict:
    return {
        "report": "analysis",
        "model_tag": bundle.model_tag,
        "length": bundle.length,
        "layer_count": bundle.layer_count,
        "kernel_count_per_direction": bundle.kernel_count_per_direction,
        "layers": [
            {
                "layer": report.layer,
                "kernels": [
                    {
                        "direction": entry.direction,
                        "kernel_index": entry.kernel_index,
                        "degenerate": entry.degenerate,
                        "summary": entry.summary,
                        "categorization": entry.categorization,
                    }
                    for entry in report.entries
                ],
            }
            for report in reports
        ],
    }


def shift_payload(report: ShiftReport, before_tag: str, after_tag: str) -> dict:
    return {
        "report": "shift",
        "before_tag": before_tag,
        "after_tag": after_tag,
        "shift_threshold": report.shift_threshold,
        "flagged_early_layers": list(report.flagged_early_layers),
        "entries": list(report.entries),
    }


def complementarity_payload(report: ComplementarityReport, model_tag: str) -> dict:
    return {
        "report": "complementarity",
        "model_tag": model_tag,
        "layers": list(report.layers),
    }


def redundancy_payload(
    pairs: Sequence[RedundancyPair], model_tag: str, cutoff: float
) -> dict:
    return {
        "report": "redundancy",
        "model_tag": model_tag,
        "cutoff": cutoff,
        "pairs": list(pairs),
    }


def probe_payload(
    task,
    result: ProbeResult,
    train: BuiltPairs,
    heldout: BuiltPairs,
    evaluation: EvalResult | None,
) -> dict:
    payload = {
        "report": "probe",
        "task": task,
        "converged": result.converged,
        "cluster_count": len(result.clusters),
        "merge_count": len(result.merge_log),
        "train_points": len(result.points),
        "train_skipped": train.skipped,
        "eval_points": len(heldout.points),
        "eval_skipped": heldout.skipped,
        "per_label_accuracy": None,
        "mean_accuracy": None,
        "unknown_labels": None,
    }
    if evaluation is not None:
        payload["per_label_accuracy"] = dict(evaluation.per_label)
        payload["mean_accuracy"] = evaluation.mean_accuracy
        payload["unknown_labels"] = list(evaluation.unknown_labels)
    return payload
