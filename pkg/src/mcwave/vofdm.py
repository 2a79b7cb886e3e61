"""Vector-OFDM modulator and demodulator.

A frame of N = L*M symbols is reshaped column-major into an M x L matrix,
each length-L row is transformed by a unitary IFFT, and the result is read
back column-wise. Equivalently x = (F_L^H kron I_M) d, the dense modulation
matrix used here as the oracle for the fast path. M = 1 reduces to plain
OFDM.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InvalidDimensionError, InvalidParameterError


@dataclass(frozen=True)
class VofdmConfig:
    """Block geometry: L vector blocks of length M, frame length N = L*M."""

    M: int
    L: int

    def __post_init__(self):
        if self.M < 1 or self.L < 1:
            raise InvalidParameterError(
                f"M and L must be >= 1, got M={self.M}, L={self.L}")

    @property
    def N(self):
        return self.M * self.L


@dataclass(frozen=True)
class VofdmFrame:
    config: VofdmConfig
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = linalg.as_complex_vector(self.data)
        if d.size != self.config.N:
            raise InvalidDimensionError(
                f"frame data length {d.size} != N={self.config.N}")
        object.__setattr__(self, "data", d)


def vofdm_modulation_matrix(cfg):
    """Dense N x N modulation matrix V = F_L^H kron I_M (unitary)."""
    f_h = linalg.dft_matrix(cfg.L).conj().T
    return np.kron(f_h, np.eye(cfg.M, dtype=np.complex128))


def vofdm_modulate(frame):
    """Fast path: column-major reshape, unitary IFFT along rows, re-stack.

    Equals vofdm_modulation_matrix(cfg) @ d.
    """
    cfg = frame.config
    d_mat = linalg.reshape_cols(frame.data, cfg.M, cfg.L)
    time_rows = np.fft.ifft(d_mat, axis=1, norm="ortho")
    return linalg.vec(time_rows)


def vofdm_demodulate(x, cfg):
    """Adjoint (= inverse) of vofdm_modulate: de-interleave, FFT rows."""
    x = linalg.as_complex_vector(x)
    if x.size != cfg.N:
        raise InvalidDimensionError(f"signal length {x.size} != N={cfg.N}")
    x_mat = linalg.reshape_cols(x, cfg.M, cfg.L)
    freq_rows = np.fft.fft(x_mat, axis=1, norm="ortho")
    return linalg.vec(freq_rows)
