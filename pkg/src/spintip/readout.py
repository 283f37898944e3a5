"""Tunneling-current readout: line classification and synthetic traces.

The current under the tip is modulated at the local electron resonance, whose
position encodes the qubit-nucleus bit and the tip-carbon bit. Reading a qubit
means finding that line — here either exactly (noise-free mode) or by peak
detection on a synthesized noisy trace.
"""

import dataclasses
import math

import numpy as np

from . import engine, physics
from .errors import AliasingError, TipParked, UnclassifiableFrequency

_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclasses.dataclass(frozen=True)
class MeasurementRecord:
    """One current readout: the line seen and the bits inferred from it."""

    qubit: int
    observed_frequency: float
    inferred_p_bit: int
    inferred_a_bit: int
    pre_measurement_probability: float


@dataclasses.dataclass(frozen=True)
class CurrentTrace:
    """Synthesized current samples at a fixed rate."""

    sample_rate: float
    samples: np.ndarray
    duration: float

    def to_text(self):
        """Two-column ``time amplitude`` listing for external plotting."""
        times = np.arange(len(self.samples)) / self.sample_rate
        return "\n".join(
            f"{float(t)!r} {float(v)!r}" for t, v in zip(times, self.samples)
        ) + "\n"


def modulation_lines(cfg, frequency_scale=1.0):
    """The four possible readout lines, keyed by (p_bit, a_bit)."""
    return {
        pair: physics.modulation_frequency(*pair, cfg) / frequency_scale
        for pair in _PAIRS
    }


def classify_frequency(frequency, cfg, tolerance=None, frequency_scale=1.0):
    """Map an observed line back to (p_bit, a_bit).

    ``tolerance`` defaults to a quarter of the smallest gap between lines;
    passing one wider than half the smallest gap is a caller bug (two lines
    would both match) and raises ValueError up front. No or several matches
    raise UnclassifiableFrequency.
    """
    lines = modulation_lines(cfg, frequency_scale)
    gaps = [
        abs(a - b)
        for i, a in enumerate(lines.values())
        for b in list(lines.values())[i + 1 :]
    ]
    smallest_gap = min(gaps)
    if tolerance is None:
        tolerance = smallest_gap / 4.0
    if tolerance >= smallest_gap / 2.0:
        raise ValueError(
            f"tolerance {tolerance:g} cannot separate lines {smallest_gap:g} apart"
        )
    matches = [pair for pair, line in lines.items() if abs(frequency - line) <= tolerance]
    if len(matches) != 1:
        raise UnclassifiableFrequency(
            f"frequency {frequency!r} matched {len(matches)} modulation lines"
        )
    return matches[0]


def measure_via_current(state, qubit, layout, cfg, rng, trace_snr=None):
    """Read one qubit through the current; return (record, collapsed state).

    The nuclear bit collapses first, then the tip carbon bit, both off the
    same RNG stream — so the nuclear marginal matches a direct measure_spin
    with the same stream. Noise-free mode reports the exact modulation line;
    with ``trace_snr`` set, a noisy trace is synthesized and the line is
    recovered by peak detection before classification.
    """
    if layout.tip_position != qubit:
        raise TipParked(f"cannot read qubit {qubit} with tip at {layout.tip_position!r}")
    rng = np.random.default_rng(rng)
    p_bit, state, probability = engine.measure_spin(state, layout.nucleus_site(qubit), rng)
    a_bit, state, _ = engine.measure_spin(state, layout.tip_site, rng)
    if trace_snr is None:
        observed = physics.modulation_frequency(p_bit, a_bit, cfg)
        inferred_p, inferred_a = p_bit, a_bit
    else:
        scale = cfg.trace_frequency_scale
        trace = synth_trace(
            p_bit,
            a_bit,
            cfg,
            snr=trace_snr,
            duration=cfg.trace_duration,
            sample_rate=cfg.trace_sample_rate,
            rng=rng,
        )
        detected = detect_peak(trace)
        observed = detected * scale
        inferred_p, inferred_a = classify_frequency(detected, cfg, frequency_scale=scale)
    record = MeasurementRecord(
        qubit=qubit,
        observed_frequency=float(observed),
        inferred_p_bit=inferred_p,
        inferred_a_bit=inferred_a,
        pre_measurement_probability=probability,
    )
    return record, state


def synth_trace(p_bit, a_bit, cfg, snr, duration, sample_rate, rng):
    """Unit sinusoid at the (scaled) modulation line plus white Gaussian noise.

    Frequencies are divided by ``cfg.trace_frequency_scale`` before synthesis —
    sampling the raw 1e11 Hz line would need absurd rates, and peak detection
    is scale-invariant. ``snr`` is signal power over noise power (sigma =
    sqrt(1/(2 snr))); pass ``math.inf`` for a clean trace.
    """
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr!r}")
    rng = np.random.default_rng(rng)
    scale = cfg.trace_frequency_scale
    line = physics.modulation_frequency(p_bit, a_bit, cfg) / scale
    highest = max(modulation_lines(cfg, scale).values())
    if sample_rate <= 2.0 * highest:
        raise AliasingError(
            f"sample rate {sample_rate:g} cannot represent lines up to {highest:g}"
        )
    count = int(round(duration * sample_rate))
    times = np.arange(count) / sample_rate
    samples = np.sin(2.0 * math.pi * line * times)
    sigma = math.sqrt(1.0 / (2.0 * snr))
    if sigma > 0:
        samples = samples + rng.normal(0.0, sigma, count)
    return CurrentTrace(sample_rate=sample_rate, samples=samples, duration=count / sample_rate)


def detect_peak(trace):
    """Strongest spectral line of a trace, in Hz at the trace's scale.

    Hann-windowed rFFT, then a three-point parabolic refinement around the
    peak bin; good to a fraction of a bin on clean traces and robust at the
    SNRs the readout cares about.
    """
    samples = np.asarray(trace.samples, dtype=np.float64)
    window = np.hanning(len(samples))
    spectrum = np.abs(np.fft.rfft(samples * window))
    if len(spectrum) < 2:
        raise ValueError("trace too short for peak detection")
    peak = 1 + int(np.argmax(spectrum[1:]))  # skip the DC bin
    offset = 0.0
    if 1 <= peak < len(spectrum) - 1:
        left, mid, right = spectrum[peak - 1], spectrum[peak], spectrum[peak + 1]
        denominator = left - 2.0 * mid + right
        if denominator != 0.0:
            offset = 0.5 * (left - right) / denominator
            offset = float(np.clip(offset, -0.5, 0.5))
    return (peak + offset) * trace.sample_rate / len(samples)
