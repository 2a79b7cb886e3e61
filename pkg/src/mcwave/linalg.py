"""Complex linear-algebra primitives shared by the modulators.

Conventions used throughout the package:

* DFT matrices and FFTs are unitary (1/sqrt(N) in both directions), so the
  VOFDM modulation matrix is exactly unitary and energy checks are clean.
* ``circular_shift(v, l)`` rotates forward: ``out[(n + l) % N] = v[n]``.
* ``vec`` / ``reshape_cols`` are column-major (Fortran order).

All functions are pure and operate on immutable inputs; they are safe to
call concurrently.
"""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import InvalidDimensionError, SingularMatrixError

# Pivot threshold for declaring a matrix singular, relative to max |entry|.
_SINGULAR_PIVOT_RTOL = 1e-12


def as_complex_vector(v):
    """Coerce to a 1-D complex128 array, rejecting NaN/Inf entries."""
    arr = np.ascontiguousarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidDimensionError("expected a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidDimensionError("vector contains NaN or Inf entries")
    return arr


def as_complex_matrix(m):
    """Coerce to a 2-D complex128 array, rejecting NaN/Inf entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.size < 1:
        raise InvalidDimensionError("expected a non-empty 2-D matrix")
    if not np.all(np.isfinite(arr)):
        raise InvalidDimensionError("matrix contains NaN or Inf entries")
    return arr


def dft_matrix(n):
    """Unitary n-point DFT matrix, entry (j, k) = exp(-2i*pi*j*k/n)/sqrt(n)."""
    if n < 1:
        raise InvalidDimensionError(f"DFT size must be >= 1, got {n}")
    j = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def kronecker(a, b):
    """Kronecker product of two matrices."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def vec(m):
    """Column-stacking vectorization of a matrix."""
    return np.asarray(m).ravel(order="F")


def reshape_cols(v, rows, cols):
    """Column-major reshape: entry (r, c) = v[c*rows + r]."""
    v = np.asarray(v)
    if v.size != rows * cols:
        raise InvalidDimensionError(
            f"cannot reshape length-{v.size} vector to {rows}x{cols}"
        )
    return v.reshape((rows, cols), order="F")


def circular_shift(v, l):
    """Rotate a vector forward by l positions: out[(n + l) % N] = v[n]."""
    return np.roll(np.asarray(v), l)


def repeat_periodic(v, m):
    """Tile a vector m times: out[n] = v[n % len(v)]."""
    if m < 1:
        raise InvalidDimensionError(f"repetition factor must be >= 1, got {m}")
    return np.tile(np.asarray(v), m)


def diag_embed(v):
    """Square matrix with v on the diagonal, zeros elsewhere."""
    return np.diag(np.asarray(v))


def fft(v):
    """Unitary FFT (matches dft_matrix(N) @ v); any length supported."""
    return np.fft.fft(np.asarray(v, dtype=np.complex128), norm="ortho")


def ifft(v):
    """Unitary inverse FFT (matches dft_matrix(N).conj().T @ v)."""
    return np.fft.ifft(np.asarray(v, dtype=np.complex128), norm="ortho")


def _lu(a):
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise InvalidDimensionError(f"matrix must be square, got {a.shape}")
    with warnings.catch_warnings():
        # exact-zero pivots are reported through SingularMatrixError below
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    threshold = _SINGULAR_PIVOT_RTOL * np.abs(a).max()
    pmin = pivots.min()
    if pmin <= threshold:
        cond = np.inf if pmin == 0.0 else pivots.max() / pmin
        raise SingularMatrixError(
            f"matrix is singular to working precision (min pivot {pmin:.3e})",
            condition=cond,
        )
    return lu, piv


def solve(a, b):
    """Solve a @ x = b by LU with partial pivoting.

    Raises SingularMatrixError when a pivot falls below
    1e-12 * max|a|, carrying a pivot-ratio condition indicator.
    """
    lu, piv = _lu(a)
    return lu_solve((lu, piv), np.asarray(b, dtype=np.complex128),
                    check_finite=False)


def invert(a):
    """Matrix inverse via the same pivoted LU as solve()."""
    lu, piv = _lu(a)
    return lu_solve((lu, piv), np.eye(lu.shape[0], dtype=np.complex128),
                    check_finite=False)
