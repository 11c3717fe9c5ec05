"""Seeded substreams and the bits -> symbols -> AWGN -> bits error counter
shared by threshold derivation and the experiment harness."""

from __future__ import annotations

import math

import numpy as np

from .channel import ChannelConfig, apply_awgn
from .constellation import Scheme, build_constellation, demap_hard, map_bits

# Substream roles; never renumber, results depend on them.
ROLE_BITS = 0
ROLE_NOISE = 1


def substream_seed(seed: int, *key: int) -> int:
    """64-bit seed for the substream identified by ``key`` under ``seed``."""
    ss = np.random.SeedSequence([int(seed) % 2**64, *[int(k) for k in key]])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def random_bits(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 2, size=n, dtype=np.uint8)


def round_bits(n_bits: int, scheme: Scheme) -> int:
    """Smallest multiple of the symbol size that is >= ``n_bits``."""
    k = scheme.bits_per_symbol
    return k * math.ceil(n_bits / k)


def ebn0_to_esn0(ebn0_db: float, scheme: Scheme) -> float:
    return ebn0_db + 10.0 * math.log10(scheme.bits_per_symbol)


def esn0_to_ebn0(esn0_db: float, scheme: Scheme) -> float:
    return esn0_db - 10.0 * math.log10(scheme.bits_per_symbol)


def count_bit_errors(scheme: Scheme, es_n0_db: float, bits: np.ndarray,
                     noise_seed: int) -> int:
    c = build_constellation(scheme)
    rx = apply_awgn(map_bits(c, bits), ChannelConfig(es_n0_db, noise_seed))
    return int(np.count_nonzero(demap_hard(c, rx) != bits))
