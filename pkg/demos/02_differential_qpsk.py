"""
Differential QPSK
=================

Dibits become phase steps (00 -> 0, 01 -> 90, 11 -> 180, 10 -> 270 degrees)
relative to the previous symbol, so a receiver with an unknown quarter-turn
carrier offset still decodes everything after the first symbol.
"""

# %%
import numpy as np

from amcmodem import dqpsk_decode, dqpsk_encode

bits = np.array([0, 0, 0, 1, 1, 1, 1, 0, 0, 1], dtype=np.uint8)
symbols = dqpsk_encode(bits, reference_phase=0.0)
print("phases:", np.round(np.rad2deg(np.angle(symbols)) % 360).astype(int))
print("decoded:", dqpsk_decode(symbols, 0.0))

# %%
# Rotate the received burst by 180 degrees without telling the receiver.
rotated = symbols * np.exp(1j * np.pi)
out = dqpsk_decode(rotated, 0.0)
print("rotated decode:", out)
print("only the first dibit differs:", np.array_equal(out[2:], bits[2:]))

# %%
# With a little phase noise the nearest quarter turn is still chosen.
rng = np.random.default_rng(0)
noisy = symbols * np.exp(1j * np.deg2rad(rng.normal(0, 10, symbols.size)))
print("noisy decode ok:", np.array_equal(dqpsk_decode(noisy, 0.0), bits))
