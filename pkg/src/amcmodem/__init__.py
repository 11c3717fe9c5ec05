"""Baseband modem library with an AWGN link simulator and adaptive modulation.

Modules
-------
constellation  BPSK/QPSK/16-QAM/64-QAM mapping, hard demapping, differential QPSK
waveform       sampled ASK/FSK/PSK/QAM carriers and coherent demodulation
channel        AWGN, log-distance path loss, data-aided SNR estimation
amc            threshold derivation and hysteresis scheme selection
harness        BER sweeps, range simulation, CSV and IQF1 export
"""

from .amc import AmcPolicy, LinkState, derive_thresholds, select_scheme, throughput_bits_per_sec
from .channel import ChannelConfig, PathLossModel, apply_awgn, estimate_snr, snr_from_distance
from .constellation import (
    Constellation,
    Scheme,
    build_constellation,
    demap_hard,
    dqpsk_decode,
    dqpsk_encode,
    map_bits,
)
from .errors import (
    ConfigurationError,
    ConsistencyError,
    DomainError,
    FramingError,
    InsufficientBudgetError,
    InsufficientDataError,
    InvalidSampleError,
    LengthError,
    ModemError,
)
from .harness import (
    LinkReport,
    RangeSimSpec,
    SweepSpec,
    emit_csv,
    export_iq,
    read_iq,
    run_ber_sweep,
    run_range_sim,
)
from .waveform import (
    PassbandParams,
    RealSamples,
    demod_coherent,
    synth_ask,
    synth_fsk,
    synth_psk_qam,
)

__version__ = "0.1.0"
