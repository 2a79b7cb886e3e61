"""Multicarrier waveform toolbox: GFDM and vector-OFDM modulators,
dense-matrix cross-validation, spectral structure checks and a small
BER link simulator."""

from .errors import (
    InvalidDimensionError,
    InvalidParameterError,
    McwaveError,
    SingularMatrixError,
)
from .gfdm import (
    GfdmBlock,
    GfdmConfig,
    PulseSpec,
    gfdm_condition_number,
    gfdm_demodulate,
    gfdm_modulate,
    gfdm_modulation_matrix,
    make_pulse,
)
from .linksim import BerResult, ChannelSpec, awgn, apply_channel, qpsk_demap, qpsk_map, run_ber
from .spectral import (
    CheckRecord,
    SpectrumReport,
    check_gfdm_window,
    check_symbol_spread,
    check_vofdm_repetition,
    table1_report,
)
from .vofdm import (
    VofdmConfig,
    VofdmFrame,
    vofdm_demodulate,
    vofdm_modulate,
    vofdm_modulation_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BerResult",
    "ChannelSpec",
    "CheckRecord",
    "GfdmBlock",
    "GfdmConfig",
    "InvalidDimensionError",
    "InvalidParameterError",
    "McwaveError",
    "PulseSpec",
    "SingularMatrixError",
    "SpectrumReport",
    "VofdmConfig",
    "VofdmFrame",
    "apply_channel",
    "awgn",
    "check_gfdm_window",
    "check_symbol_spread",
    "check_vofdm_repetition",
    "gfdm_condition_number",
    "gfdm_demodulate",
    "gfdm_modulate",
    "gfdm_modulation_matrix",
    "make_pulse",
    "qpsk_demap",
    "qpsk_map",
    "run_ber",
    "table1_report",
    "vofdm_demodulate",
    "vofdm_modulate",
    "vofdm_modulation_matrix",
]
