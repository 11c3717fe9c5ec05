"""Adaptive modulation: BER-driven threshold derivation and scheme selection.

Thresholds are Es/N0 values found by Monte Carlo on a fixed 0.25 dB grid.
Selection picks the highest-order scheme the SNR supports, with hysteresis
applied to upgrades only so the BER target is never traded for throughput.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .config import format_kv, parse_kv
from .constellation import Scheme
from .errors import (
    ConfigurationError,
    ConsistencyError,
    DomainError,
    InsufficientBudgetError,
)
from .link import ROLE_BITS, ROLE_NOISE, count_bit_errors, random_bits, round_bits, substream_seed

__all__ = [
    "GRID_MIN_DB",
    "GRID_MAX_DB",
    "GRID_STEP_DB",
    "AmcPolicy",
    "LinkState",
    "find_threshold",
    "derive_thresholds",
    "select_scheme",
    "throughput_bits_per_sec",
]

GRID_MIN_DB = -2.0
GRID_MAX_DB = 40.0
GRID_STEP_DB = 0.25
_GRID_SIZE = int(round((GRID_MAX_DB - GRID_MIN_DB) / GRID_STEP_DB)) + 1


def _grid(i: int) -> float:
    return GRID_MIN_DB + GRID_STEP_DB * i


@dataclass(frozen=True)
class AmcPolicy:
    """Ordered ``(scheme, min Es/N0 dB)`` entries plus the BER target they meet."""

    entries: tuple[tuple[Scheme, float], ...]
    target_ber: float
    hysteresis_db: float = 0.0

    def __post_init__(self):
        entries = tuple((Scheme(s), float(t)) for s, t in self.entries)
        object.__setattr__(self, "entries", entries)
        schemes = [s for s, _ in entries]
        if len(set(schemes)) != len(schemes):
            raise ConfigurationError("policy lists a scheme more than once")
        if Scheme.BPSK not in schemes:
            raise ConfigurationError("policy must include BPSK")
        bps = [s.bits_per_symbol for s in schemes]
        if bps != sorted(bps):
            raise ConfigurationError("policy entries must be sorted by bits per symbol")
        thresholds = [t for _, t in entries]
        if not all(math.isfinite(t) for t in thresholds):
            raise ConfigurationError("thresholds must be finite")
        if any(b >= a for a, b in zip(thresholds[1:], thresholds)):
            raise ConfigurationError("thresholds must increase strictly with bits per symbol")
        if not 0 < self.target_ber < 0.5:
            raise ConfigurationError("target_ber must lie in (0, 0.5)")
        if not (self.hysteresis_db >= 0 and math.isfinite(self.hysteresis_db)):
            raise ConfigurationError("hysteresis_db must be a finite value >= 0")

    @property
    def schemes(self) -> tuple[Scheme, ...]:
        return tuple(s for s, _ in self.entries)

    def threshold(self, scheme: Scheme) -> float:
        for s, t in self.entries:
            if s is scheme:
                return t
        raise KeyError(scheme)

    def to_text(self) -> str:
        items = [("target-ber", repr(self.target_ber)),
                 ("hysteresis", repr(float(self.hysteresis_db)))]
        items += [(f"threshold.{s.name}", repr(t)) for s, t in self.entries]
        return format_kv(items)

    @classmethod
    def from_text(cls, text: str) -> "AmcPolicy":
        kv = parse_kv(text)
        try:
            target = float(kv.pop("target-ber"))
            hyst = float(kv.pop("hysteresis", "0"))
            entries = []
            for key, value in kv.items():
                prefix, _, name = key.partition(".")
                if prefix != "threshold":
                    raise ConfigurationError(f"unknown policy key {key!r}")
                entries.append((Scheme.parse(name), float(value)))
        except KeyError as exc:
            raise ConfigurationError(f"policy is missing {exc.args[0]!r}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(str(exc)) from None
        entries.sort(key=lambda e: e[0].bits_per_symbol)
        return cls(tuple(entries), target, hyst)


@dataclass(frozen=True)
class LinkState:
    current_scheme: Scheme = Scheme.BPSK
    last_snr_db: float = -math.inf


def find_threshold(scheme: Scheme, target_ber: float, n_bits: int, seed: int = 0) -> float:
    """Smallest grid Es/N0 whose Monte-Carlo BER is at or below ``target_ber``.

    Every grid point reuses the same bits and the same unit noise, so the
    measured BER is (nearly) monotone in SNR and bisection over the grid is
    safe. Returns ``GRID_MIN_DB`` when the target is already met there.
    """
    bits = random_bits(round_bits(n_bits, scheme),
                       substream_seed(seed, scheme.order, ROLE_BITS))
    noise_seed = substream_seed(seed, scheme.order, ROLE_NOISE)

    def meets(i):
        return count_bit_errors(scheme, _grid(i), bits, noise_seed) <= target_ber * bits.size

    if meets(0):
        return _grid(0)
    lo, hi = 0, _GRID_SIZE - 1
    if not meets(hi):
        raise ConsistencyError(
            f"{scheme.name} misses BER {target_ber:g} even at {GRID_MAX_DB} dB"
        )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if meets(mid):
            hi = mid
        else:
            lo = mid
    return _grid(hi)


def derive_thresholds(target_ber: float, schemes=tuple(Scheme), sim_budget: int | None = None,
                      seed: int = 0, hysteresis_db: float = 0.0, workers: int = 1) -> AmcPolicy:
    """Build an :class:`AmcPolicy` whose thresholds meet ``target_ber``.

    Parameters
    ----------
    target_ber : float
        Between 1e-6 and 1e-1.
    schemes : iterable of Scheme
        Must include BPSK.
    sim_budget : int, optional
        Bits simulated per grid point; defaults to ``ceil(100 / target_ber)``,
        the least budget accepted.
    seed : int
        Root seed. Each scheme draws from its own substream, so thresholds do
        not depend on which other schemes are derived or on ``workers``.
    """
    if not 1e-6 <= target_ber <= 1e-1:
        raise ConfigurationError("target_ber must lie in [1e-6, 1e-1]")
    min_budget = math.ceil(100.0 / target_ber)
    if sim_budget is None:
        sim_budget = min_budget
    if sim_budget < min_budget:
        raise InsufficientBudgetError(
            f"budget {sim_budget} bits cannot resolve BER {target_ber:g}; need >= {min_budget}"
        )
    schemes = sorted(set(Scheme(s) for s in schemes), key=lambda s: s.bits_per_symbol)
    if Scheme.BPSK not in schemes:
        raise ConfigurationError("schemes must include BPSK")

    def one(s):
        return find_threshold(s, target_ber, sim_budget, seed)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            thresholds = list(pool.map(one, schemes))
    else:
        thresholds = [one(s) for s in schemes]

    if any(b >= a for a, b in zip(thresholds[1:], thresholds)):
        raise ConsistencyError(
            "derived thresholds are not strictly increasing: "
            + ", ".join(f"{s.name}={t}" for s, t in zip(schemes, thresholds))
        )
    return AmcPolicy(tuple(zip(schemes, thresholds)), target_ber, hysteresis_db)


def select_scheme(snr_db: float, policy: AmcPolicy, state: LinkState | None = None) -> Scheme:
    """Highest-order scheme supported at ``snr_db``, never below BPSK.

    Downgrades happen immediately. An upgrade from ``state.current_scheme``
    goes to the highest scheme whose threshold plus ``hysteresis_db`` is met;
    if none is, the current scheme is kept.
    """
    supported = [s for s, t in policy.entries if t <= snr_db]
    candidate = supported[-1] if supported else policy.entries[0][0]
    if state is None or state.current_scheme not in policy.schemes:
        current = policy.entries[0][0]
    else:
        current = state.current_scheme
    if candidate.bits_per_symbol <= current.bits_per_symbol:
        return candidate
    margin = [s for s, t in policy.entries
              if s.bits_per_symbol > current.bits_per_symbol
              and snr_db >= t + policy.hysteresis_db]
    return margin[-1] if margin else current


def throughput_bits_per_sec(scheme: Scheme, symbol_rate: float) -> float:
    if not (symbol_rate > 0 and math.isfinite(symbol_rate)):
        raise DomainError(f"symbol rate must be positive, got {symbol_rate}")
    return Scheme(scheme).bits_per_symbol * float(symbol_rate)
