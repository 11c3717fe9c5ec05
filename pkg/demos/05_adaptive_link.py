"""
Adaptive modulation over distance
=================================

Derive SNR thresholds that hold a BER target, then walk a link outward from
the transmitter and watch the scheme step down from 64-QAM to BPSK.
"""

# %%
import numpy as np

from amcmodem import (
    LinkState,
    PathLossModel,
    RangeSimSpec,
    derive_thresholds,
    run_range_sim,
    select_scheme,
)

policy = derive_thresholds(1e-3, seed=0, hysteresis_db=1.0, workers=4)
print(policy.to_text())

# %%
spec = RangeSimSpec(tuple(np.geomspace(1, 100, 21)), policy, PathLossModel(snr0_db=30.0),
                    symbol_rate=1e6, bits_per_point=120_000)
for d, r in zip(spec.distances, run_range_sim(spec, workers=4)):
    print(f"{d:7.2f} m  SNR {r.snr_db:6.2f} dB  {r.scheme.name:6s} "
          f"BER {r.ber:.2e}  goodput {r.goodput / 1e6:.3f} Mbit/s")

# %%
# Hysteresis: an SNR that wobbles around the 16-QAM threshold does not make
# the controller flap between schemes.
t16 = policy.entries[2][1]
state = LinkState()
for snr in [t16 + 2, t16 - 0.4, t16 + 0.4, t16 - 0.4, t16 + 0.4, t16 + 1.2]:
    scheme = select_scheme(snr, policy, state)
    state = LinkState(scheme, snr)
    print(f"SNR {snr:6.2f} dB -> {scheme.name}")
