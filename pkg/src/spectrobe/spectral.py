"""Kernels, one-sided magnitude spectra, and summary metrics.

A kernel is a finite sequence of real convolution weights. Its spectrum is
the magnitude of the real-input discrete Fourier transform over the grid
f(n) = n/N for n = 0..floor(N/2), so every frequency lies in [0, 0.5]
cycles per sample at unit sample rate. Magnitudes are kept raw; none of
the metrics depend on normalization.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]

LOW_BAND_FRACTION = 0.10
HIGH_BAND_FRACTION = 0.40

# A band sum this small relative to the spectrum total is rounding dust,
# not tail energy. Sized to absorb float32 kernel payloads, whose
# quantization shows up in the spectrum around 1e-8 of the total.
ZERO_BAND_FLOOR = 1e-6


class DegenerateKernelError(ValueError):
    """The kernel, or a spectrum derived from it, carries no energy."""


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


def _as_float_vector(values, minimum_length: int) -> FloatArray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    if arr.size < minimum_length:
        raise ValueError(f"need at least {minimum_length} samples, got {arr.size}")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise ValueError(f"non-finite value at index {bad[0]}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, slots=True, eq=False)
class Kernel:
    """Time-domain convolution weights plus their place in a model.

    ``layer`` is 1-based; ``kernel_index`` distinguishes kernels when a
    layer holds several per direction. ``tag`` is free-form text, usually
    a model or checkpoint name.
    """

    values: FloatArray
    layer: int = 1
    direction: Direction = Direction.FORWARD
    kernel_index: int = 0
    tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float_vector(self.values, 2))
        object.__setattr__(self, "direction", Direction(self.direction))
        if self.layer < 1:
            raise ValueError(f"layer must be >= 1, got {self.layer}")
        if self.kernel_index < 0:
            raise ValueError(f"kernel_index must be >= 0, got {self.kernel_index}")

    @property
    def length(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True, slots=True, eq=False)
class Spectrum:
    """One-sided magnitude spectrum on the grid f(n) = n/N."""

    frequencies: FloatArray
    magnitudes: FloatArray
    source_length: int

    def __post_init__(self):
        freqs = _as_float_vector(self.frequencies, 1)
        mags = _as_float_vector(self.magnitudes, 1)
        n = self.source_length
        if n < 2:
            raise ValueError(f"source_length must be >= 2, got {n}")
        if freqs.size != n // 2 + 1:
            raise ValueError(
                f"expected {n // 2 + 1} bins for source_length {n}, got {freqs.size}"
            )
        if mags.size != freqs.size:
            raise ValueError("frequencies and magnitudes must have equal length")
        if freqs[0] != 0.0 or np.any(np.diff(freqs) <= 0):
            raise ValueError("frequencies must start at 0 and increase strictly")
        if freqs[-1] > 0.5:
            raise ValueError("frequencies must not exceed 0.5")
        if np.any(mags < 0):
            raise ValueError("magnitudes must be nonnegative")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "magnitudes", mags)

    @property
    def bin_count(self) -> int:
        return int(self.frequencies.size)

    def bins(self) -> list[tuple[float, float]]:
        """(frequency, magnitude) pairs, ascending in frequency."""
        return list(zip(self.frequencies.tolist(), self.magnitudes.tolist()))


@dataclass(frozen=True, slots=True)
class SpectralSummary:
    """Scalar metrics of one spectrum.

    ``lhfr`` is the low/high band magnitude ratio; ``math.inf`` when the
    high band is empty. ``tail_free`` marks spectra whose energy sits
    entirely between the two bands, where the ratio is reported as 1.0.
    """

    centroid: float
    e_low: float
    e_high: float
    lhfr: float
    dominant_frequency: float
    total_magnitude: float
    tail_free: bool = False


def compute_spectrum(kernel: Kernel) -> Spectrum:
    """One-sided magnitude spectrum of a kernel, unnormalized."""
    n = kernel.length
    mags = np.abs(np.fft.rfft(kernel.values))
    freqs = np.arange(mags.size, dtype=np.float64) / n
    return Spectrum(freqs, mags, n)


def spectral_centroid(spectrum: Spectrum) -> float:
    """Magnitude-weighted mean frequency of the spectrum.

    Raises DegenerateKernelError when the spectrum carries no energy;
    a centroid of nothing is undefined and classification must refuse it.
    """
    total = float(spectrum.magnitudes.sum())
    if total <= 0.0:
        raise DegenerateKernelError("all-zero spectrum has no centroid")
    weighted = float((spectrum.frequencies * spectrum.magnitudes).sum())
    return weighted / total


def band_energies(
    spectrum: Spectrum,
    *,
    low_fraction: float = LOW_BAND_FRACTION,
    high_fraction: float = HIGH_BAND_FRACTION,
) -> tuple[float, float]:
    """Summed magnitudes in the low and high tails of the frequency range.

    The low band covers f <= low_fraction * 0.5 and the high band covers
    f >= (1 - high_fraction) * 0.5, both boundary-inclusive. Fractions are
    of the representable range [0, 0.5], not of the bin count.
    """
    for name, value in (("low_fraction", low_fraction), ("high_fraction", high_fraction)):
        if not 0.0 < value < 1.0:
            raise ValueError(f"{name} must lie in (0, 1), got {value}")
    if low_fraction + high_fraction > 1.0:
        raise ValueError("low and high bands overlap; fractions must sum to at most 1")
    low_edge = low_fraction * 0.5
    high_edge = (1.0 - high_fraction) * 0.5
    freqs = spectrum.frequencies
    mags = spectrum.magnitudes
    e_low = float(mags[freqs <= low_edge].sum())
    e_high = float(mags[freqs >= high_edge].sum())
    return e_low, e_high


def lhfr(e_low: float, e_high: float) -> float:
    """Low-to-high band ratio; math.inf when the high band is empty."""
    if e_low < 0 or e_high < 0:
        raise ValueError("band energies must be nonnegative")
    if e_high == 0.0:
        if e_low == 0.0:
            raise DegenerateKernelError("both band energies are zero")
        return math.inf
    return e_low / e_high


def dominant_frequency(spectrum: Spectrum) -> float:
    """Frequency of the strongest bin, DC included, lowest bin on ties."""
    return float(spectrum.frequencies[int(np.argmax(spectrum.magnitudes))])


def summarize(
    spectrum: Spectrum,
    *,
    low_fraction: float = LOW_BAND_FRACTION,
    high_fraction: float = HIGH_BAND_FRACTION,
) -> SpectralSummary:
    """All scalar metrics of a spectrum in one pass.

    Band sums below ZERO_BAND_FLOOR of the total are treated as empty.
    When both tails are empty but the spectrum is not, the ratio is
    reported as 1.0 with ``tail_free`` set, so downstream classification
    reads the kernel as mid-band.
    """
    total = float(spectrum.magnitudes.sum())
    if total <= 0.0:
        raise DegenerateKernelError("all-zero spectrum cannot be summarized")
    centroid = spectral_centroid(spectrum)
    e_low, e_high = band_energies(
        spectrum, low_fraction=low_fraction, high_fraction=high_fraction
    )
    floor = ZERO_BAND_FLOOR * total
    if e_low <= floor and e_high <= floor:
        ratio, tail_free = 1.0, True
    else:
        ratio, tail_free = lhfr(e_low, e_high), False
    return SpectralSummary(
        centroid=centroid,
        e_low=e_low,
        e_high=e_high,
        lhfr=ratio,
        dominant_frequency=dominant_frequency(spectrum),
        total_magnitude=total,
        tail_free=tail_free,
    )
