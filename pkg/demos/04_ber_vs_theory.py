"""
BER curves against theory
=========================

Monte-Carlo sweeps for every scheme on an Eb/N0 axis, next to the textbook
Gray-coded expressions.
"""

# %%
import math

import numpy as np

from amcmodem import Scheme, SweepSpec, run_ber_sweep


def q(x):
    return 0.5 * math.erfc(x / math.sqrt(2))


def theory(scheme, ebn0_db):
    g = 10 ** (ebn0_db / 10)
    if scheme in (Scheme.BPSK, Scheme.QPSK):
        return q(math.sqrt(2 * g))
    m, k = scheme.order, scheme.bits_per_symbol
    return (4 / k) * (1 - 1 / math.sqrt(m)) * q(math.sqrt(3 * k / (m - 1) * g))


ebn0 = np.arange(0.0, 15.0, 2.0)
curves = {}
for scheme in Scheme:
    reports = run_ber_sweep(SweepSpec(scheme, ebn0, 240_000, seed=1), workers=4)
    curves[scheme] = reports
    print(scheme.name)
    for r in reports:
        flag = "" if r.reliable else "  (fewer than 100 errors)"
        print(f"  Eb/N0 {r.ebn0_db:5.1f} dB  BER {r.ber:.3e}  theory {theory(scheme, r.ebn0_db):.3e}{flag}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 5))
    fine = np.linspace(0, 14, 200)
    for scheme, reports in curves.items():
        pts = [(r.ebn0_db, r.ber) for r in reports if r.bit_errors]
        line, = ax.semilogy(*zip(*pts), "o", label=scheme.name)
        ax.semilogy(fine, [theory(scheme, x) for x in fine], color=line.get_color())
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BER")
    ax.set_ylim(1e-6, 0.5)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.savefig("ber_vs_theory.png", dpi=120)
