"""GFDM modulator, receivers and conditioning diagnostics.

A K x M data block (K subcarriers, M subsymbols) is modulated as

    x = sum_m diag(shift(g, m*K)) tile_M(IFFT_K(d_m))

with a unitary K-point IFFT, giving the per-column closed form

    a_{k,m}[n] = g[(n - m*K) mod N] * exp(2i*pi*k*n/K) / sqrt(K).

The prototype pulse g is normalized to ||g||_2 = sqrt(K) so every column of
the modulation matrix A has unit norm; with the rectangular pulse and M = 1
this makes A exactly the unitary OFDM modulator F_K^H.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels, linalg
from .errors import InvalidDimensionError, InvalidParameterError

PULSE_KINDS = ("raised-cosine-time", "rect-subsymbol", "dirichlet", "custom")


@dataclass(frozen=True)
class PulseSpec:
    """Prototype filter descriptor.

    kind: one of PULSE_KINDS. rolloff applies to raised-cosine-time only;
    samples (length N) applies to custom only.
    """

    kind: str = "raised-cosine-time"
    rolloff: float = 0.5
    samples: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in PULSE_KINDS:
            raise InvalidParameterError(
                f"unknown pulse kind {self.kind!r}; expected one of {PULSE_KINDS}")
        if self.kind == "raised-cosine-time" and not 0.0 <= self.rolloff <= 1.0:
            raise InvalidParameterError(
                f"rolloff must be in [0, 1], got {self.rolloff}")
        if self.kind == "custom" and self.samples is None:
            raise InvalidParameterError("custom pulse requires samples")


@dataclass(frozen=True)
class GfdmConfig:
    """Block geometry: K subcarriers x M subsymbols, N = K*M samples."""

    K: int
    M: int
    pulse: PulseSpec = PulseSpec()

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise InvalidParameterError(
                f"K and M must be >= 1, got K={self.K}, M={self.M}")

    @property
    def N(self):
        return self.K * self.M


@dataclass(frozen=True)
class GfdmBlock:
    config: GfdmConfig
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = linalg.as_complex_matrix(self.data)
        if d.shape != (self.config.K, self.config.M):
            raise InvalidDimensionError(
                f"block shape {d.shape} != (K={self.config.K}, M={self.config.M})")
        object.__setattr__(self, "data", d)


def _raised_cosine(n_samples, spacing, rolloff):
    """Time-domain raised cosine sampled on a circularly wrapped axis.

    Zero-phase: the main lobe is centered at sample 0; negative times wrap
    to the end of the vector.
    """
    n = np.arange(n_samples)
    t = ((n + n_samples // 2) % n_samples) - n_samples // 2
    t = t.astype(np.float64) / spacing
    g = np.sinc(t)
    if rolloff > 0.0:
        denom = 1.0 - (2.0 * rolloff * t) ** 2
        singular = np.isclose(denom, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            g = g * np.cos(np.pi * rolloff * t) / denom
        # limit of the 0/0 points: (pi/4) * sinc(1/(2*rolloff))
        g[singular] = np.pi / 4.0 * np.sinc(1.0 / (2.0 * rolloff))
    return g


def make_pulse(cfg):
    """Length-N prototype pulse, normalized to ||g||_2 = sqrt(K)."""
    spec = cfg.pulse
    n_total = cfg.N
    if spec.kind == "rect-subsymbol":
        g = np.zeros(n_total, dtype=np.complex128)
        g[: cfg.K] = 1.0
    elif spec.kind in ("raised-cosine-time", "dirichlet"):
        rolloff = spec.rolloff if spec.kind == "raised-cosine-time" else 0.0
        g = _raised_cosine(n_total, cfg.K, rolloff).astype(np.complex128)
    else:  # custom
        g = linalg.as_complex_vector(spec.samples)
        if g.size != n_total:
            raise InvalidDimensionError(
                f"custom pulse length {g.size} != N={n_total}")
    norm = np.linalg.norm(g)
    if norm == 0.0:
        raise InvalidParameterError("prototype pulse must be nonzero")
    return g * (np.sqrt(cfg.K) / norm)


def gfdm_modulation_matrix(cfg, pulse=None):
    """Dense N x N modulation matrix A.

    Column m*K + k (vec ordering of the K x M block) is
    g[(n - m*K) mod N] * exp(2i*pi*k*n/K) / sqrt(K).
    """
    g = make_pulse(cfg) if pulse is None else pulse
    n = np.arange(cfg.N)
    carriers = np.exp(2j * np.pi * np.outer(n, np.arange(cfg.K)) / cfg.K)
    carriers /= np.sqrt(cfg.K)
    a = np.empty((cfg.N, cfg.N), dtype=np.complex128)
    for m in range(cfg.M):
        a[:, m * cfg.K:(m + 1) * cfg.K] = np.roll(g, m * cfg.K)[:, None] * carriers
    return a


def gfdm_modulate(block, pulse=None):
    """Fast path: per-subsymbol unitary K-point IFFT, M-fold periodic
    tiling, elementwise multiply by the shifted pulse, accumulate.

    Equals gfdm_modulation_matrix(cfg) @ vec(D).
    """
    cfg = block.config
    g = make_pulse(cfg) if pulse is None else pulse
    subsym_ifft = np.fft.ifft(block.data, axis=0, norm="ortho")
    return kernels.gfdm_combine(subsym_ifft, g, cfg.K, cfg.M)


def gfdm_demodulate(x, cfg, mode="zf"):
    """Matched-filter (A^H x) or zero-forcing (A^{-1} x) receiver.

    ZF raises SingularMatrixError when A is singular to working precision.
    """
    x = linalg.as_complex_vector(x)
    if x.size != cfg.N:
        raise InvalidDimensionError(f"signal length {x.size} != N={cfg.N}")
    mode = mode.lower()
    a = gfdm_modulation_matrix(cfg)
    if mode == "mf":
        d = a.conj().T @ x
    elif mode == "zf":
        d = linalg.solve(a, x)
    else:
        raise InvalidParameterError(f"unknown receiver mode {mode!r}")
    return GfdmBlock(cfg, linalg.reshape_cols(d, cfg.K, cfg.M))


def gfdm_condition_number(cfg):
    """2-norm condition number of A via SVD; +inf for singular A."""
    s = np.linalg.svd(gfdm_modulation_matrix(cfg), compute_uv=False)
    if s[-1] <= s[0] * np.finfo(np.float64).eps * cfg.N:
        return np.inf
    return float(s[0] / s[-1])
