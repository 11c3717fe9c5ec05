"""Experiment runner: BER sweeps, adaptive range simulation, CSV and IQ export.

Every random draw comes from a substream keyed by ``(seed, point index,
role)``, so results are identical whatever ``workers`` is set to.
"""

from __future__ import annotations

import io
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .amc import AmcPolicy, LinkState, select_scheme, throughput_bits_per_sec
from .channel import PathLossModel, snr_from_distance
from .constellation import Scheme
from .errors import ConfigurationError
from .link import (
    ROLE_BITS,
    ROLE_NOISE,
    count_bit_errors,
    ebn0_to_esn0,
    esn0_to_ebn0,
    random_bits,
    substream_seed,
)
from .waveform import RealSamples

__all__ = [
    "SweepSpec",
    "RangeSimSpec",
    "LinkReport",
    "run_ber_sweep",
    "run_range_sim",
    "CSV_HEADER",
    "emit_csv",
    "IQ_MAGIC",
    "IQ_HEADER",
    "export_iq",
    "read_iq",
]

MIN_BITS_PER_POINT = 10_000
RELIABLE_MIN_ERRORS = 100


@dataclass(frozen=True)
class LinkReport:
    scheme: Scheme
    snr_db: float  # Es/N0
    ebn0_db: float
    bits_sent: int
    bit_errors: int
    goodput: float  # bits/s

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_sent if self.bits_sent else 0.0

    @property
    def reliable(self) -> bool:
        """False when the measured BER is below ``100 / bits_sent``."""
        return self.bit_errors >= RELIABLE_MIN_ERRORS


@dataclass(frozen=True)
class SweepSpec:
    scheme: Scheme
    ebn0_db_points: tuple[float, ...]
    bits_per_point: int = 1_000_000
    seed: int = 0
    symbol_rate: float = 1e6

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "ebn0_db_points", tuple(float(x) for x in self.ebn0_db_points))
        if not all(math.isfinite(x) for x in self.ebn0_db_points):
            raise ConfigurationError("Eb/N0 points must be finite")
        k = self.scheme.bits_per_symbol
        if self.bits_per_point < MIN_BITS_PER_POINT or self.bits_per_point % k:
            raise ConfigurationError(
                f"bits_per_point must be >= {MIN_BITS_PER_POINT} and a multiple of {k}"
            )
        if not (self.symbol_rate > 0 and math.isfinite(self.symbol_rate)):
            raise ConfigurationError("symbol_rate must be positive")


@dataclass(frozen=True)
class RangeSimSpec:
    distances: tuple[float, ...]
    policy: AmcPolicy
    path_loss: PathLossModel = PathLossModel()
    symbol_rate: float = 1e6
    bits_per_point: int = 120_000
    seed: int = 0

    def __post_init__(self):
        d = tuple(float(x) for x in self.distances)
        object.__setattr__(self, "distances", d)
        if not d:
            raise ConfigurationError("need at least one distance")
        if not all(x > 0 and math.isfinite(x) for x in d):
            raise ConfigurationError("distances must be positive and finite")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ConfigurationError("distances must be strictly increasing")
        if not (self.symbol_rate > 0 and math.isfinite(self.symbol_rate)):
            raise ConfigurationError("symbol_rate must be positive")
        if self.bits_per_point < MIN_BITS_PER_POINT:
            raise ConfigurationError(f"bits_per_point must be >= {MIN_BITS_PER_POINT}")


def _simulate(scheme: Scheme, es_n0_db: float, n_bits: int, seed: int, index: int) -> int:
    bits = random_bits(n_bits, substream_seed(seed, index, ROLE_BITS))
    return count_bit_errors(scheme, es_n0_db, bits, substream_seed(seed, index, ROLE_NOISE))


def _pmap(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def run_ber_sweep(spec: SweepSpec, workers: int = 1) -> list[LinkReport]:
    scheme = spec.scheme
    capacity = throughput_bits_per_sec(scheme, spec.symbol_rate)

    def point(i):
        ebn0 = spec.ebn0_db_points[i]
        esn0 = ebn0_to_esn0(ebn0, scheme)
        errors = _simulate(scheme, esn0, spec.bits_per_point, spec.seed, i)
        return LinkReport(scheme, esn0, ebn0, spec.bits_per_point, errors,
                          capacity * (1 - errors / spec.bits_per_point))

    return _pmap(point, range(len(spec.ebn0_db_points)), workers)


def run_range_sim(spec: RangeSimSpec, workers: int = 1) -> list[LinkReport]:
    """Walk outward from the nearest distance, adapting the scheme at each step."""
    schedule = []
    state = LinkState()
    for d in spec.distances:
        snr = snr_from_distance(d, spec.path_loss)
        scheme = select_scheme(snr, spec.policy, state)
        state = LinkState(scheme, snr)
        schedule.append((scheme, snr))

    def point(i):
        scheme, snr = schedule[i]
        k = scheme.bits_per_symbol
        n_bits = k * (spec.bits_per_point // k)
        errors = _simulate(scheme, snr, n_bits, spec.seed, i)
        goodput = throughput_bits_per_sec(scheme, spec.symbol_rate) * (1 - errors / n_bits)
        return LinkReport(scheme, snr, esn0_to_ebn0(snr, scheme), n_bits, errors, goodput)

    return _pmap(point, range(len(schedule)), workers)


CSV_HEADER = "scheme,snr_db,ebn0_db,bits,bit_errors,ber,goodput_bps,reliable"


def _decimal(x: float) -> str:
    return np.format_float_positional(float(x), trim="-")


def _csv_row(r: LinkReport) -> str:
    ber = np.format_float_positional(r.ber, precision=6, unique=False,
                                     fractional=False, trim="-")
    return ",".join([
        r.scheme.name, _decimal(r.snr_db), _decimal(r.ebn0_db), str(r.bits_sent),
        str(r.bit_errors), ber, _decimal(r.goodput), "true" if r.reliable else "false",
    ])


def emit_csv(reports, destination) -> None:
    """Write reports as UTF-8 CSV with LF line endings.

    ``destination`` is a path or an open text stream.
    """
    text = "".join(line + "\n" for line in [CSV_HEADER, *map(_csv_row, reports)])
    if isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


IQ_MAGIC = b"IQF1"
IQ_HEADER = struct.Struct("<4sB3xd")
KIND_COMPLEX = 0
KIND_REAL = 1


class IqFile(NamedTuple):
    kind: int
    sample_rate: float
    samples: np.ndarray


def export_iq(samples, destination, sample_rate: float | None = None) -> None:
    """Write an IQF1 file: 16-byte header then little-endian float32 payload.

    Complex input is interleaved I, Q. ``RealSamples`` carry their own sample
    rate; for bare arrays pass ``sample_rate`` (defaults to 1.0).
    """
    if isinstance(samples, RealSamples):
        data, rate = samples.samples, samples.sample_rate
    else:
        data, rate = np.asarray(samples).reshape(-1), sample_rate
    rate = 1.0 if rate is None else float(rate)
    if np.iscomplexobj(data):
        kind = KIND_COMPLEX
        payload = np.empty(2 * data.size, dtype="<f4")
        payload[0::2] = data.real
        payload[1::2] = data.imag
    else:
        kind = KIND_REAL
        payload = np.asarray(data, dtype="<f4")
    with open(destination, "wb") as fh:
        fh.write(IQ_HEADER.pack(IQ_MAGIC, kind, rate))
        fh.write(payload.tobytes())


def read_iq(source) -> IqFile:
    with open(source, "rb") as fh:
        head = fh.read(IQ_HEADER.size)
        payload = fh.read()
    if len(head) != IQ_HEADER.size:
        raise ValueError("truncated IQF1 header")
    magic, kind, rate = IQ_HEADER.unpack(head)
    if magic != IQ_MAGIC or kind not in (KIND_COMPLEX, KIND_REAL):
        raise ValueError("not an IQF1 file")
    values = np.frombuffer(payload, dtype="<f4").astype(np.float64)
    if kind == KIND_COMPLEX:
        if values.size % 2:
            raise ValueError("complex payload has an odd number of floats")
        values = values[0::2] + 1j * values[1::2]
    return IqFile(kind, rate, values)
