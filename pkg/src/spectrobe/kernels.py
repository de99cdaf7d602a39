"""Kernel construction: diagonal state-space materialization, ideal filter
synthesis, and bidirectional composition."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .classify import FilterClass
from .spectral import Direction, Kernel, Spectrum, compute_spectrum

ComplexArray = npt.NDArray[np.complex128]


class StabilityError(ValueError):
    """A state-space pole sits on or right of the imaginary axis."""


class Window(enum.Enum):
    HAMMING = "hamming"
    RECTANGULAR = "rectangular"


def _as_complex_vector(values, name: str) -> ComplexArray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-D sequence, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains a non-finite value")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, slots=True, eq=False)
class S4DParams:
    """Diagonal state-space parameters: one pole and one coefficient per
    mode, plus the discretization step (time per sample).

    Poles must have strictly negative real part; the materialized kernel
    is then a damped sum of complex exponentials. Callers wanting
    conjugate-pair semantics double the coefficient instead of listing
    the conjugate mode.
    """

    poles: ComplexArray
    coefficients: ComplexArray
    step: float

    def __post_init__(self):
        poles = _as_complex_vector(self.poles, "poles")
        coeffs = _as_complex_vector(self.coefficients, "coefficients")
        if poles.size != coeffs.size:
            raise ValueError(
                f"got {poles.size} poles but {coeffs.size} coefficients"
            )
        unstable = np.flatnonzero(poles.real >= 0)
        if unstable.size:
            raise StabilityError(
                f"pole {unstable[0]} has nonnegative real part "
                f"({poles[unstable[0]]:.6g})"
            )
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def state_size(self) -> int:
        return int(self.poles.size)


@dataclass(frozen=True, slots=True)
class SynthSpec:
    """Recipe for an ideal test filter.

    ``cutoff_low`` is the single cutoff for low- and high-pass designs and
    the lower band edge for band-pass; ``cutoff_high`` is the upper band
    edge and only meaningful for band-pass. Cutoffs are normalized
    frequencies in (0, 0.5).
    """

    target_class: FilterClass
    cutoff_low: float
    cutoff_high: float | None = None
    length: int = 256
    window: Window = Window.HAMMING

    def __post_init__(self):
        if self.length < 16:
            raise ValueError(f"length must be >= 16, got {self.length}")
        if not 0.0 < self.cutoff_low < 0.5:
            raise ValueError(f"cutoff_low {self.cutoff_low} outside (0, 0.5)")
        if self.target_class is FilterClass.BAND_PASS:
            if self.cutoff_high is None:
                raise ValueError("band-pass synthesis needs cutoff_high")
            if not 0.0 < self.cutoff_high < 0.5:
                raise ValueError(f"cutoff_high {self.cutoff_high} outside (0, 0.5)")
            if not self.cutoff_low < self.cutoff_high:
                raise ValueError(
                    f"band edges must satisfy cutoff_low < cutoff_high, got "
                    f"{self.cutoff_low} >= {self.cutoff_high}"
                )
        elif self.cutoff_high is not None:
            raise ValueError("cutoff_high only applies to band-pass synthesis")


def materialize_s4d(
    params: S4DParams,
    length: int,
    *,
    layer: int = 1,
    direction: Direction = Direction.FORWARD,
    kernel_index: int = 0,
    tag: str = "",
) -> Kernel:
    """Kernel of a diagonal state-space system under zero-order hold.

    With abar = exp(step * a) and bbar = (abar - 1) / a per mode,
    K[l] = Re(sum_n c_n * bbar_n * abar_n**l) for l = 0..length-1.
    """
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    if params.state_size == 0:
        values = np.zeros(length)
    else:
        abar = np.exp(params.step * params.poles)
        bbar = (abar - 1.0) / params.poles
        powers = abar[:, None] ** np.arange(length)[None, :]
        values = ((params.coefficients * bbar) @ powers).real
    return Kernel(values, layer=layer, direction=direction,
                  kernel_index=kernel_index, tag=tag)


def _window_taps(count: int, window: Window) -> np.ndarray:
    if window is Window.HAMMING:
        return np.hamming(count)
    return np.ones(count)


def _low_pass_taps(cutoff: float, length: int, window: Window) -> np.ndarray:
    # odd tap count keeps the delay integral so spectral inversion stays exact
    taps = length if length % 2 == 1 else length - 1
    center = (taps - 1) // 2
    m = np.arange(taps) - center
    h = 2.0 * cutoff * np.sinc(2.0 * cutoff * m)
    h = h * _window_taps(taps, window)
    h = h / h.sum()
    out = np.zeros(length)
    out[:taps] = h
    return out


def _high_pass_taps(cutoff: float, length: int, window: Window) -> np.ndarray:
    taps = length if length % 2 == 1 else length - 1
    center = (taps - 1) // 2
    out = -_low_pass_taps(cutoff, length, window)
    out[center] += 1.0
    return out


def _band_pass_taps(low: float, high: float, length: int) -> np.ndarray:
    # sampled ideal response: unit gain on every bin strictly inside the
    # band (bins sitting exactly on an edge stay out, so the kernel owns
    # no tail energy), linear phase about an integer center
    bins = length // 2 + 1
    freqs = np.arange(bins) / length
    gain = ((freqs > low) & (freqs < high)).astype(np.float64)
    if not gain.any():
        raise ValueError(
            f"no spectrum bins inside ({low}, {high}) at length {length}; "
            "widen the band or lengthen the kernel"
        )
    center = length // 2
    phase = np.exp(-2j * np.pi * np.arange(bins) * center / length)
    return np.fft.irfft(gain * phase, n=length)


def synth_kernel(
    spec: SynthSpec,
    *,
    layer: int = 1,
    direction: Direction = Direction.FORWARD,
    kernel_index: int = 0,
    tag: str | None = None,
) -> Kernel:
    """Ideal filter kernel for exercising the classification pipeline.

    Low-pass is a windowed sinc normalized to unit DC gain. High-pass is
    its spectral inversion (a centered unit impulse minus the low-pass).
    Band-pass samples the ideal band response on the kernel's own
    frequency grid, which pins the passband to the bins the analysis
    reads; the window setting plays no role there.
    """
    if spec.target_class is FilterClass.LOW_PASS:
        values = _low_pass_taps(spec.cutoff_low, spec.length, spec.window)
    elif spec.target_class is FilterClass.HIGH_PASS:
        values = _high_pass_taps(spec.cutoff_low, spec.length, spec.window)
    else:
        values = _band_pass_taps(spec.cutoff_low, spec.cutoff_high, spec.length)
    if tag is None:
        edges = f"{spec.cutoff_low:g}"
        if spec.cutoff_high is not None:
            edges += f"-{spec.cutoff_high:g}"
        tag = f"synth {spec.target_class.value} {edges}"
    return Kernel(values, layer=layer, direction=direction,
                  kernel_index=kernel_index, tag=tag)


def compose_elementwise(forward: Kernel, backward: Kernel) -> Spectrum:
    """Spectrum of the elementwise product of two equal-length kernels.

    Multiplying the directions in the time domain convolves their spectra,
    so paired kernels occupying the same band reinforce it (sum and
    difference frequencies appear). The product of two kernels can be
    all-zero; such a spectrum is degenerate and summarize() refuses it.
    """
    if forward.length != backward.length:
        raise ValueError(
            f"kernel lengths differ: {forward.length} vs {backward.length}"
        )
    product = Kernel(
        forward.values * backward.values,
        layer=forward.layer,
        direction=forward.direction,
        kernel_index=forward.kernel_index,
        tag=f"compose({forward.tag or 'forward'}, {backward.tag or 'backward'})",
    )
    return compute_spectrum(product)
