"""Compare the numba-jitted kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py
The same fallback path can be forced package-wide with MCWAVE_NO_NUMBA=1.
"""

import time

import numpy as np

from mcwave import kernels


def bench(label, func, *args, repeats=200):
    func(*args)  # warm up (trigger jit compilation)
    start = time.perf_counter()
    for _ in range(repeats):
        func(*args)
    elapsed = (time.perf_counter() - start) / repeats
    print(f"  {label:<28s} {elapsed * 1e6:10.1f} us/call")
    return elapsed


def main():
    rng = np.random.default_rng(0)
    print(f"numba enabled: {kernels.NUMBA_ENABLED}")

    for (k, m) in [(16, 8), (64, 16), (128, 32)]:
        n = k * m
        subsym = rng.standard_normal((k, m)) + 1j * rng.standard_normal((k, m))
        pulse = rng.standard_normal(n) + 0j
        print(f"\ngfdm_combine K={k} M={m} (N={n}):")
        t_np = bench("numpy fallback", kernels._gfdm_combine_numpy,
                     subsym, pulse, k, m)
        if kernels.NUMBA_ENABLED:
            t_jit = bench("numba @njit", kernels.gfdm_combine,
                          subsym, pulse, k, m)
            print(f"  speedup: {t_np / t_jit:.1f}x")
            ref = kernels._gfdm_combine_numpy(subsym, pulse, k, m)
            out = kernels.gfdm_combine(subsym, pulse, k, m)
            assert np.abs(out - ref).max() < 1e-12

    for size in [1 << 10, 1 << 14, 1 << 18]:
        symbols = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        print(f"\nqpsk_hard_bits n={size}:")
        t_np = bench("numpy fallback", kernels._qpsk_hard_bits_numpy, symbols)
        if kernels.NUMBA_ENABLED:
            t_jit = bench("numba @njit", kernels.qpsk_hard_bits, symbols)
            print(f"  speedup: {t_np / t_jit:.1f}x")
            assert np.array_equal(kernels.qpsk_hard_bits(symbols),
                                  kernels._qpsk_hard_bits_numpy(symbols))


if __name__ == "__main__":
    main()
