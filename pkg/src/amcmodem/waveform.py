"""Sampled passband keying (ASK, FSK, PSK/QAM) and coherent demodulation.

All waveforms use rectangular symbol segments of ``samples_per_symbol``
samples with time measured from the first sample of the burst. Carrier and
FSK tones must fit a whole number of cycles in one symbol, which makes the
quadrature correlator in :func:`demod_coherent` exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constellation import _as_bits
from .errors import ConfigurationError, FramingError

__all__ = [
    "PassbandParams",
    "RealSamples",
    "synth_ask",
    "synth_fsk",
    "synth_psk_qam",
    "demod_coherent",
]


def _whole_cycles(freq: float, sps: int, sample_rate: float) -> bool:
    cycles = freq * sps / sample_rate
    return cycles > 0 and abs(cycles - round(cycles)) < 1e-9


@dataclass(frozen=True)
class PassbandParams:
    carrier_frequency: float = 1000.0
    sample_rate: float = 16000.0
    samples_per_symbol: int = 16
    fsk_frequencies: tuple[float, float] = (1000.0, 2000.0)
    ask_amplitudes: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        fc, fs, sps = self.carrier_frequency, self.sample_rate, self.samples_per_symbol
        f0, f1 = self.fsk_frequencies
        a0, a1 = self.ask_amplitudes
        if not all(np.isfinite([fc, fs, f0, f1, a0, a1])):
            raise ConfigurationError("passband parameters must be finite")
        if int(sps) != sps or sps < 4:
            raise ConfigurationError("samples_per_symbol must be an integer >= 4")
        if fc <= 0 or f0 <= 0 or f1 <= 0:
            raise ConfigurationError("frequencies must be positive")
        if not fs > 2 * max(fc, f0, f1):
            raise ConfigurationError(
                f"sample_rate {fs} Hz violates Nyquist for {max(fc, f0, f1)} Hz"
            )
        if not _whole_cycles(fc, sps, fs):
            raise ConfigurationError(
                "carrier must complete a whole number of cycles per symbol"
            )
        if not a0 < a1:
            raise ConfigurationError("ASK amplitudes need a0 < a1")
        if f0 == f1:
            raise ConfigurationError("FSK tones must differ")

    @property
    def symbol_rate(self) -> float:
        return self.sample_rate / self.samples_per_symbol


@dataclass(frozen=True, eq=False)
class RealSamples:
    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(x)):
            raise ValueError("real samples must be finite")
        object.__setattr__(self, "samples", x)

    def __len__(self):
        return self.samples.size


def _time(n: int, p: PassbandParams) -> np.ndarray:
    # Whole carrier cycles per symbol make the carrier periodic in the symbol,
    # so the in-symbol index gives the same phase and identical segments.
    return (np.arange(n) % p.samples_per_symbol) / p.sample_rate


def synth_ask(bits, p: PassbandParams) -> RealSamples:
    bits = _as_bits(bits)
    amp = np.asarray(p.ask_amplitudes, dtype=np.float64)[bits]
    env = np.repeat(amp, p.samples_per_symbol)
    t = _time(env.size, p)
    return RealSamples(env * np.sin(2 * np.pi * p.carrier_frequency * t), p.sample_rate)


def synth_fsk(bits, p: PassbandParams) -> RealSamples:
    """Phase-continuous binary FSK at ``p.fsk_frequencies[bit]``."""
    for f in p.fsk_frequencies:
        if not _whole_cycles(f, p.samples_per_symbol, p.sample_rate):
            raise ConfigurationError(
                f"FSK tone {f} Hz is not a whole number of cycles per symbol"
            )
    bits = _as_bits(bits)
    freq = np.repeat(np.asarray(p.fsk_frequencies, dtype=np.float64)[bits],
                     p.samples_per_symbol)
    # phase at sample n accumulates the frequencies of samples 0..n-1
    cycles = np.cumsum(freq) - freq
    return RealSamples(np.sin(2 * np.pi * cycles / p.sample_rate), p.sample_rate)


def synth_psk_qam(symbols, p: PassbandParams) -> RealSamples:
    """Upconvert complex symbols: ``I cos(wt) - Q sin(wt)`` per segment."""
    s = np.repeat(np.asarray(symbols, dtype=np.complex128).reshape(-1),
                  p.samples_per_symbol)
    w = 2 * np.pi * p.carrier_frequency * _time(s.size, p)
    return RealSamples(s.real * np.cos(w) - s.imag * np.sin(w), p.sample_rate)


def demod_coherent(samples: RealSamples, p: PassbandParams, n_symbols: int) -> np.ndarray:
    """Quadrature correlator with perfect carrier phase and symbol timing.

    Raises
    ------
    FramingError
        If the sample count is not ``n_symbols * samples_per_symbol``.
    """
    x = samples.samples if isinstance(samples, RealSamples) else np.asarray(samples, float)
    sps = p.samples_per_symbol
    if x.size != n_symbols * sps:
        raise FramingError(
            f"expected {n_symbols} x {sps} samples, got {x.size}"
        )
    if isinstance(samples, RealSamples) and samples.sample_rate != p.sample_rate:
        raise ConfigurationError("sample rate differs from receiver parameters")
    w = 2 * np.pi * p.carrier_frequency * _time(x.size, p)
    i = (2.0 / sps) * (x * np.cos(w)).reshape(n_symbols, sps).sum(axis=1)
    q = -(2.0 / sps) * (x * np.sin(w)).reshape(n_symbols, sps).sum(axis=1)
    return i + 1j * q
