"""
Constellations and Gray labels
==============================

Build each alphabet, check its energy, and look at how labels sit on the
16-QAM grid.
"""

# %%
import numpy as np

from amcmodem import Scheme, build_constellation, demap_hard, map_bits

for scheme in Scheme:
    c = build_constellation(scheme)
    energy = np.mean(np.abs(c.points) ** 2)
    print(f"{scheme.name:6s} M={c.order:2d} k={c.k} mean energy={energy:.12f}")

# %%
# 16-QAM labels laid out on the grid (I to the right, Q up). Horizontal and
# vertical neighbours differ in one bit.
c = build_constellation(Scheme.QAM16)
scaled = np.round(c.points * np.sqrt(10)).astype(complex)
for q in (3, 1, -1, -3):
    row = []
    for i in (-3, -1, 1, 3):
        label = int(np.flatnonzero(scaled == complex(i, q))[0])
        row.append(format(label, "04b"))
    print("  ".join(row))

# %%
# Map a few bits, perturb them, and demap.
bits = np.array([0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0], dtype=np.uint8)
tx = map_bits(c, bits)
rx = tx + 0.1 * np.array([1 + 1j, -1j, 0.5])
print("tx:", np.round(tx, 3))
print("bits out == bits in:", np.array_equal(demap_hard(c, rx), bits))

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 4, figsize=(14, 3.5))
    for ax, scheme in zip(axes, Scheme):
        cc = build_constellation(scheme)
        ax.scatter(cc.points.real, cc.points.imag, s=12)
        if cc.order <= 16:
            for label, p in enumerate(cc.points):
                ax.annotate(format(label, f"0{cc.k}b"), (p.real, p.imag), fontsize=7)
        ax.set_title(scheme.name)
        ax.set_aspect("equal")
    fig.savefig("constellations.png", dpi=120)
