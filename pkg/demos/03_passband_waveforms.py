"""
Passband keying
===============

ASK, FSK and PSK on a sampled carrier, and a coherent receiver that brings
16-QAM back to baseband.
"""

# %%
import numpy as np

from amcmodem import (
    PassbandParams,
    Scheme,
    build_constellation,
    demap_hard,
    demod_coherent,
    export_iq,
    map_bits,
    synth_ask,
    synth_fsk,
    synth_psk_qam,
)

p = PassbandParams(carrier_frequency=2000, sample_rate=32000, samples_per_symbol=32,
                   fsk_frequencies=(1000, 3000), ask_amplitudes=(0.25, 1.0))
bits = [0, 1, 1, 0, 1]

ask = synth_ask(bits, p)
fsk = synth_fsk(bits, p)
bpsk = synth_psk_qam(map_bits(build_constellation(Scheme.BPSK), bits), p)
print("samples per waveform:", len(ask), len(fsk), len(bpsk))

# %%
# A BPSK bit flip is an exact sign flip of the segment.
sps = p.samples_per_symbol
print("segment 1 == -segment 0:", np.array_equal(bpsk.samples[sps:2 * sps], -bpsk.samples[:sps]))

# %%
# 16-QAM through the carrier and back.
c = build_constellation(Scheme.QAM16)
rng = np.random.default_rng(3)
data = rng.integers(0, 2, 400, dtype=np.uint8)
sym = map_bits(c, data)
wave = synth_psk_qam(sym, p)
back = demod_coherent(wave, p, sym.size)
print("max I/Q error:", np.max(np.abs(back - sym)))
print("bits recovered:", np.array_equal(demap_hard(c, back), data))

# %%
# Waveforms can be handed to other DSP tools as IQF1 files.
export_iq(wave, "qam16_passband.iq")
export_iq(sym, "qam16_baseband.iq", sample_rate=p.symbol_rate)

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    t = np.arange(len(ask)) / p.sample_rate * 1e3
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(8, 6))
    for ax, (name, w) in zip(axes, [("ASK", ask), ("FSK", fsk), ("BPSK", bpsk)]):
        ax.plot(t, w.samples)
        ax.set_ylabel(name)
    axes[-1].set_xlabel("time (ms)")
    fig.savefig("waveforms.png", dpi=120)
