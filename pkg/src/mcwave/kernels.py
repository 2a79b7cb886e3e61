"""Hot inner loops, numba-jitted with a pure-numpy fallback.

Set the environment variable ``MCWAVE_NO_NUMBA=1`` before import to force
the numpy path (useful for debugging and for the jit-vs-numpy benchmark in
``benchmarks/bench_kernels.py``). Both paths produce bit-identical results.
"""

import os

import numpy as np


def _numba_requested():
    flag = os.environ.get("MCWAVE_NO_NUMBA", "").strip().lower()
    if flag in ("1", "true", "yes", "on"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_requested()


def _gfdm_combine_numpy(subsym_ifft, pulse, K, M):
    N = K * M
    x = np.zeros(N, dtype=np.complex128)
    for m in range(M):
        x += np.roll(pulse, m * K) * np.tile(subsym_ifft[:, m], M)
    return x


def _qpsk_hard_bits_numpy(symbols):
    bits = np.empty(2 * symbols.size, dtype=np.uint8)
    bits[0::2] = symbols.real < 0.0
    bits[1::2] = symbols.imag < 0.0
    return bits


def _count_bit_errors_numpy(a, b):
    return int(np.count_nonzero(a != b))


if NUMBA_ENABLED:
    from numba import njit

    @njit(cache=True)
    def _gfdm_combine_jit(subsym_ifft, pulse, K, M):
        N = K * M
        x = np.zeros(N, dtype=np.complex128)
        for m in range(M):
            off = m * K
            for n in range(N):
                x[n] += pulse[(n - off) % N] * subsym_ifft[n % K, m]
        return x

    @njit(cache=True)
    def _qpsk_hard_bits_jit(symbols):
        bits = np.empty(2 * symbols.size, dtype=np.uint8)
        for i in range(symbols.size):
            bits[2 * i] = 1 if symbols[i].real < 0.0 else 0
            bits[2 * i + 1] = 1 if symbols[i].imag < 0.0 else 0
        return bits

    @njit(cache=True)
    def _count_bit_errors_jit(a, b):
        n = 0
        for i in range(a.size):
            if a[i] != b[i]:
                n += 1
        return n

    def gfdm_combine(subsym_ifft, pulse, K, M):
        return _gfdm_combine_jit(
            np.ascontiguousarray(subsym_ifft, dtype=np.complex128),
            np.ascontiguousarray(pulse, dtype=np.complex128),
            K, M,
        )

    def qpsk_hard_bits(symbols):
        return _qpsk_hard_bits_jit(
            np.ascontiguousarray(symbols, dtype=np.complex128))

    def count_bit_errors(a, b):
        return int(_count_bit_errors_jit(np.ascontiguousarray(a),
                                         np.ascontiguousarray(b)))

else:
    gfdm_combine = _gfdm_combine_numpy
    qpsk_hard_bits = _qpsk_hard_bits_numpy
    count_bit_errors = _count_bit_errors_numpy
