"""Forward/backward complementarity in a bidirectional model.

Bidirectional state space layers run one kernel over the sequence left
to right and a second one right to left. An interesting division of
labor shows up when the two directions of a layer specialize in
opposite frequency ranges. This demo fabricates a six layer bundle in
which two layers split the spectrum, one hedges with a band-pass, and
the rest stay low-pass, then lets the detector find the split layers.

Run:
    python3 demos/bidirectional_pairs.py
"""
import numpy as np

from spectrobe import (
    Direction,
    FilterClass,
    Kernel,
    KernelBundle,
    SynthSpec,
    analyze_bundle,
    detect_complementary,
    synth_kernel,
)

LAYER_PLAN = {
    1: (FilterClass.LOW_PASS, FilterClass.LOW_PASS),
    2: (FilterClass.HIGH_PASS, FilterClass.LOW_PASS),
    3: (FilterClass.LOW_PASS, FilterClass.LOW_PASS),
    4: (FilterClass.BAND_PASS, FilterClass.LOW_PASS),
    5: (FilterClass.LOW_PASS, FilterClass.HIGH_PASS),
    6: (FilterClass.LOW_PASS, FilterClass.LOW_PASS),
}

CUTOFFS = {
    FilterClass.LOW_PASS: SynthSpec(FilterClass.LOW_PASS, 0.03),
    FilterClass.HIGH_PASS: SynthSpec(FilterClass.HIGH_PASS, 0.46),
    FilterClass.BAND_PASS: SynthSpec(FilterClass.BAND_PASS, 0.20, cutoff_high=0.30),
}


def build_bundle() -> KernelBundle:
    kernels = []
    for layer, (fwd_class, bwd_class) in LAYER_PLAN.items():
        for direction, target in (
            (Direction.FORWARD, fwd_class),
            (Direction.BACKWARD, bwd_class),
        ):
            base = synth_kernel(CUTOFFS[target])
            kernels.append(
                Kernel(np.asarray(base.values), layer=layer, direction=direction)
            )
    return KernelBundle.from_kernels("demo-bidir", kernels)


def main() -> None:
    bundle = build_bundle()
    report = detect_complementary(analyze_bundle(bundle))

    print("layer   forward      backward     complementarity")
    print("-" * 52)
    for row in report.layers:
        fwd = row.forward_class.value if row.forward_class else "outlier"
        bwd = row.backward_class.value if row.backward_class else "outlier"
        print(f"{row.layer:<7} {fwd:<12} {bwd:<12} {row.strength.value}")

    strict = [row.layer for row in report.layers
              if row.strength.value == "strict"]
    weak = [row.layer for row in report.layers if row.strength.value == "weak"]
    print()
    print(f"strict splits at layers {strict}: one direction keeps the slow")
    print("trend, the other watches fast transitions. The two halves of the")
    print("layer cover the spectrum between them.")
    if weak:
        print(f"weak pairing at layers {weak}: a band-pass next to a low- or")
        print("high-pass leans the same way without a full split.")


if __name__ == "__main__":
    main()
