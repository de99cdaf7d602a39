"""The full file pipeline, driven through the command line interface.

Starts from a parameter export (the small JSON format a training run
writes; see docs/formats.md), materializes the convolution kernels into
a bundle of float32 payloads, analyzes the bundle into a JSON report,
and renders one kernel's spectrum as an SVG. Every artifact ends up
under --out so the on-disk layout can be inspected afterwards.

Run:
    python3 demos/export_and_files.py [--out DIR]
"""
import argparse
import json
from pathlib import Path

from spectrobe.cli import main as run_cli

PARAMS = {
    "model_tag": "demo-ssm",
    "step": 0.05,
    "layers": [
        {
            "layer": 1,
            "forward": [{"modes": [
                {"a": [-0.2, 0.0], "c": [1.0, 0.0]},
                {"a": [-0.5, 1.2], "c": [0.3, -0.1]},
            ]}],
            "backward": [{"modes": [
                {"a": [-0.3, 3.0], "c": [0.8, 0.0]},
            ]}],
        },
        {
            "layer": 2,
            "forward": [{"modes": [
                {"a": [-1.5, 0.0], "c": [1.0, 0.0]},
            ], "step": 0.2}],
            "backward": [{"modes": [
                {"a": [-0.1, 0.4], "c": [0.5, 0.5]},
            ]}],
        },
    ],
}


def run(argv: list[str]) -> None:
    print("$ spectrobe " + " ".join(argv))
    code = run_cli(argv)
    if code != 0:
        raise SystemExit(f"demo step failed with exit code {code}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("demo_output"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    params_path = args.out / "params.json"
    params_path.write_text(json.dumps(PARAMS, indent=2) + "\n")
    bundle_dir = args.out / "demo-ssm-bundle"
    report_path = args.out / "analysis.json"
    svg_path = args.out / "layer1_forward.svg"

    run(["materialize", "--params", str(params_path), "--length", "128",
         "--out", str(bundle_dir)])
    run(["analyze", "--bundle", str(bundle_dir), "--out", str(report_path)])
    run(["plot", "--bundle", str(bundle_dir), "--layer", "1",
         "--direction", "forward", "--out", str(svg_path)])

    print()
    print("bundle layout:")
    for path in sorted(bundle_dir.iterdir()):
        print(f"  {path.name}  ({path.stat().st_size} bytes)")

    report = json.loads(report_path.read_text())
    print()
    print("per-kernel verdicts from the report:")
    for layer_entry in report["layers"]:
        for entry in layer_entry["kernels"]:
            print(
                "  layer {layer} {direction}: centroid {sc:.4f}, class {cls}".format(
                    layer=layer_entry["layer"],
                    direction=entry["direction"],
                    sc=entry["summary"]["centroid"],
                    cls=entry["categorization"]["combined"],
                )
            )
    print()
    print(f"artifacts under {args.out}/: params.json, the bundle directory,")
    print("analysis.json, and an SVG spectrum plot")


if __name__ == "__main__":
    main()
