"""
Modulation alphabets, bit <-> symbol mapping and differential QPSK.

Conventions
-----------
* A complex point ``I + jQ`` has phase ``atan2(Q, I)``.
* Labels are read MSB-first from the bit stream.
* Square QAM uses a reflected Gray code per axis; the MSB half of the label
  drives the I axis and the LSB half drives the Q axis. QPSK is the 2x2 case
  of the same construction and BPSK is its 1-D case (label 0 at phase 0).
* Every constellation is scaled to unit average symbol energy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSampleError, LengthError

__all__ = [
    "Scheme",
    "Constellation",
    "build_constellation",
    "map_bits",
    "demap_hard",
    "DQPSK_SHIFTS",
    "dqpsk_encode",
    "dqpsk_decode",
]


class Scheme(enum.Enum):
    BPSK = 2
    QPSK = 4
    QAM16 = 16
    QAM64 = 64

    @property
    def order(self) -> int:
        return self.value

    @property
    def bits_per_symbol(self) -> int:
        return self.value.bit_length() - 1

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        """Case-insensitive lookup that also accepts ``16qam``/``qam-16``."""
        key = name.strip().upper().replace("-", "").replace("_", "")
        aliases = {"16QAM": "QAM16", "64QAM": "QAM64"}
        key = aliases.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}") from None


def _gray(n):
    return n ^ (n >> 1)


def _pam_gray_levels(m: int) -> np.ndarray:
    """Unnormalized PAM amplitude for each m-bit Gray label.

    Label 0 sits at the most positive level, ``2**m - 1``.
    """
    size = 1 << m
    levels = np.empty(size)
    for pos in range(size):
        levels[_gray(pos)] = (size - 1) - 2 * pos
    return levels


@dataclass(frozen=True, eq=False)
class Constellation:
    """Labeled unit-energy point set; ``points[label]`` is the symbol."""

    scheme: Scheme
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128).copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def order(self) -> int:
        return self.scheme.order

    @property
    def k(self) -> int:
        return self.scheme.bits_per_symbol

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.order)


def build_constellation(scheme: Scheme) -> Constellation:
    scheme = Scheme(scheme)
    k = scheme.bits_per_symbol
    if scheme is Scheme.BPSK:
        points = _pam_gray_levels(1).astype(np.complex128)
    else:
        half = k // 2
        levels = _pam_gray_levels(half)
        labels = np.arange(scheme.order)
        points = levels[labels >> half] + 1j * levels[labels & ((1 << half) - 1)]
    points = points / np.sqrt(np.mean(np.abs(points) ** 2))
    return Constellation(scheme, points)


def _as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bits must be 0 or 1")
    return arr.astype(np.uint8, copy=False)


def map_bits(c: Constellation, bits) -> np.ndarray:
    """Map a bit stream to one complex symbol per ``c.k`` bits (MSB first).

    Raises
    ------
    LengthError
        If ``len(bits)`` is not a multiple of ``c.k``. No padding is applied.
    """
    bits = _as_bits(bits)
    if bits.size % c.k:
        raise LengthError(
            f"{bits.size} bits is not a multiple of {c.k} bits/symbol"
        )
    weights = 1 << np.arange(c.k - 1, -1, -1)
    labels = bits.reshape(-1, c.k) @ weights
    return c.points[labels]


def _check_finite(samples) -> np.ndarray:
    x = np.asarray(samples, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise InvalidSampleError("samples contain NaN or Inf")
    return x


def _labels_to_bits(labels: np.ndarray, k: int) -> np.ndarray:
    shifts = np.arange(k - 1, -1, -1)
    return ((labels[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)


_CHUNK = 1 << 16


def demap_hard(c: Constellation, samples) -> np.ndarray:
    """Minimum Euclidean distance decisions, returned as bits.

    Equidistant points resolve to the lowest label.
    """
    x = _check_finite(samples)
    labels = np.empty(x.size, dtype=np.int64)
    pts = c.points
    for start in range(0, x.size, _CHUNK):
        blk = x[start:start + _CHUNK, None]
        d = (blk.real - pts.real) ** 2 + (blk.imag - pts.imag) ** 2
        # argmin returns the first minimum, i.e. the lowest label.
        labels[start:start + _CHUNK] = np.argmin(d, axis=1)
    return _labels_to_bits(labels, c.k)


# Phase shift in degrees for each dibit, indexed by its 2-bit value.
DQPSK_SHIFTS = {0b00: 0, 0b01: 90, 0b11: 180, 0b10: 270}

_SHIFT_STEPS = np.array([DQPSK_SHIFTS[v] // 90 for v in range(4)])
_STEP_TO_DIBIT = np.array([0b00, 0b01, 0b11, 0b10])
# Exact unit vectors at 0, 90, 180, 270 degrees.
_QUARTER = np.array([1, 1j, -1, -1j], dtype=np.complex128)


def dqpsk_encode(bits, reference_phase: float = 0.0) -> np.ndarray:
    """Differentially encode dibits as cumulative quarter-turn phase shifts.

    The first dibit is applied relative to a unit phasor at
    ``reference_phase`` degrees.
    """
    bits = _as_bits(bits)
    if bits.size % 2:
        raise LengthError(f"differential QPSK needs an even bit count, got {bits.size}")
    dibits = bits[0::2] * 2 + bits[1::2]
    steps = np.cumsum(_SHIFT_STEPS[dibits]) % 4
    return np.exp(1j * np.deg2rad(reference_phase)) * _QUARTER[steps]


def dqpsk_decode(symbols, reference_phase: float = 0.0) -> np.ndarray:
    """Recover dibits from phase differences between consecutive symbols.

    Each difference is quantized to the nearest quarter turn; an exact tie
    goes to the smaller shift.
    """
    s = _check_finite(symbols)
    if np.any(s == 0):
        raise InvalidSampleError("zero-magnitude symbol has no phase")
    prev = np.concatenate(([np.exp(1j * np.deg2rad(reference_phase))], s[:-1]))
    diff = np.rad2deg(np.angle(s * np.conj(prev))) % 360.0
    candidates = np.array([0.0, 90.0, 180.0, 270.0])
    dist = np.abs(diff[:, None] - candidates)
    dist = np.minimum(dist, 360.0 - dist)
    steps = np.argmin(dist, axis=1)
    return _labels_to_bits(_STEP_TO_DIBIT[steps], 2)
