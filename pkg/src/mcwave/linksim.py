"""Minimal link-level BER harness.

Cyclic channel + AWGN + Gray-mapped QPSK over the three modulators. The
channel is applied as a circular convolution, so the unitary FFT
diagonalizes it exactly (no cyclic-prefix machinery needed). Receivers:

* ofdm  - per-bin zero forcing; an exactly nulled bin is decoded as 0.
* vofdm - per-bin MMSE (conj(H)*Y / (|H|^2 + sigma^2)) then the adjoint
  demodulator, spreading each symbol across its M spectral copies.
* gfdm  - per-bin MMSE then zero-forcing block demodulation.

Every frame draws its own RNG substream from (seed, frame_index), so
results are independent of evaluation order.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, linalg
from .errors import InvalidParameterError
from .gfdm import GfdmConfig, gfdm_modulation_matrix, make_pulse
from .vofdm import VofdmConfig, vofdm_demodulate, vofdm_modulate, VofdmFrame

SYSTEMS = ("ofdm", "vofdm", "gfdm")

# |H| below this counts as an exact spectral null for the ZF receiver.
_NULL_FLOOR = 1e-12


@dataclass(frozen=True)
class ChannelSpec:
    """Impulse response applied as a length-N circular convolution."""

    taps: np.ndarray = field(repr=False)
    description: str = ""

    def __post_init__(self):
        taps = linalg.as_complex_vector(self.taps)
        if not np.any(taps):
            raise InvalidParameterError("channel needs at least one nonzero tap")
        object.__setattr__(self, "taps", taps)

    def frequency_response(self, n):
        """Per-bin response H such that Y = H * X under unitary FFTs."""
        if self.taps.size > n:
            raise InvalidParameterError(
                f"channel has {self.taps.size} taps but frame length is {n}")
        return np.fft.fft(self.taps, n=n)


@dataclass(frozen=True)
class BerResult:
    system: str
    snr_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    seed: int


def qpsk_map(bits):
    """Gray-mapped unit-energy QPSK: (b0, b1) -> ((1-2b0) + i(1-2b1))/sqrt(2)."""
    bits = np.asarray(bits)
    if bits.size % 2 != 0:
        raise InvalidParameterError(f"bit count must be even, got {bits.size}")
    pairs = bits.reshape(-1, 2).astype(np.float64)
    return ((1.0 - 2.0 * pairs[:, 0]) + 1j * (1.0 - 2.0 * pairs[:, 1])) / math.sqrt(2.0)


def qpsk_demap(symbols):
    """Hard sign decisions back to bits; inverse of qpsk_map without noise."""
    return kernels.qpsk_hard_bits(np.asarray(symbols, dtype=np.complex128))


def apply_channel(x, channel):
    """Circular convolution of the transmit signal with the channel taps."""
    x = np.asarray(x, dtype=np.complex128)
    h = channel.frequency_response(x.size)
    return np.fft.ifft(np.fft.fft(x) * h)


def awgn(x, snr_db, rng):
    """Add complex AWGN at per-sample variance Es / 10^(snr/10).

    snr_db = +inf returns x unchanged.
    """
    x = np.asarray(x, dtype=np.complex128)
    if np.isinf(snr_db) and snr_db > 0:
        return x
    es = float(np.sum(np.abs(x) ** 2)) / x.size
    sigma2 = es / 10.0 ** (snr_db / 10.0)
    noise = rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size)
    return x + noise * math.sqrt(sigma2 / 2.0)


def _noise_variance(snr_db):
    # nominal per-sample Es = 1 for unit-energy QPSK through the modulators
    if np.isinf(snr_db) and snr_db > 0:
        return 0.0
    return 10.0 ** (-snr_db / 10.0)


def run_ber(system, cfg, channel, snr_db, n_frames, seed):
    """Monte-Carlo BER of one system over the cyclic channel at one SNR.

    cfg is a VofdmConfig for "ofdm" (M must be 1) and "vofdm", a GfdmConfig
    for "gfdm". Deterministic for a fixed seed; each frame uses the RNG
    substream (seed, frame_index).
    """
    if system not in SYSTEMS:
        raise InvalidParameterError(f"unknown system {system!r}; expected {SYSTEMS}")
    if n_frames < 1:
        raise InvalidParameterError(f"n_frames must be >= 1, got {n_frames}")

    if system == "gfdm":
        if not isinstance(cfg, GfdmConfig):
            raise InvalidParameterError("gfdm requires a GfdmConfig")
        n = cfg.N
        pulse = make_pulse(cfg)
        a = gfdm_modulation_matrix(cfg, pulse=pulse)
        a_inv = linalg.invert(a)  # raises SingularMatrixError when singular
    else:
        if not isinstance(cfg, VofdmConfig):
            raise InvalidParameterError(f"{system} requires a VofdmConfig")
        if system == "ofdm" and cfg.M != 1:
            raise InvalidParameterError("ofdm is VOFDM with M = 1")
        n = cfg.N

    h = channel.frequency_response(n)
    h_conj = np.conj(h)
    h_pow = np.abs(h) ** 2
    sigma2 = _noise_variance(snr_db)
    zf_usable = np.abs(h) > _NULL_FLOOR

    bits_sent = 0
    bit_errors = 0
    for frame in range(n_frames):
        rng = np.random.default_rng([seed, frame])
        bits = rng.integers(0, 2, size=2 * n, dtype=np.uint8)
        d = qpsk_map(bits)

        if system == "gfdm":
            x = a @ d
        else:
            x = vofdm_modulate(VofdmFrame(cfg, d))

        y = awgn(apply_channel(x, channel), snr_db, rng)
        y_freq = np.fft.fft(y, norm="ortho")
        if system == "ofdm":
            x_freq = np.where(zf_usable, y_freq / np.where(zf_usable, h, 1.0), 0.0)
        else:
            x_freq = h_conj * y_freq / (h_pow + sigma2)
        x_hat = np.fft.ifft(x_freq, norm="ortho")

        if system == "gfdm":
            d_hat = a_inv @ x_hat
        else:
            d_hat = vofdm_demodulate(x_hat, cfg)

        bit_errors += kernels.count_bit_errors(bits, qpsk_demap(d_hat))
        bits_sent += bits.size

    return BerResult(
        system=system,
        snr_db=float(snr_db),
        bits_sent=bits_sent,
        bit_errors=bit_errors,
        ber=bit_errors / bits_sent,
        seed=seed,
    )
