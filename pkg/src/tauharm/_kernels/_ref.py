"""NumPy reference kernels.

Pure-Python fallback for the compiled extension in ``_core``.  Both modules
expose the same two primitives with identical semantics:

* ``dft_last_axis(x, inverse)`` -- unscaled DFT along the last axis of a 2-D
  complex array; forward uses exp(-2*pi*i*j*k/n), inverse exp(+...), neither
  applies a 1/n factor (the driver scales once for the whole product group).
* ``fourier_quadrature(rows, nodes, weights, freqs, sign)`` -- weighted
  Fourier sums out[i,l] = sum_j weights[j]*rows[i,j]*exp(sign*2*pi*i*freqs[i,l]*nodes[j]).
"""

from functools import lru_cache

import numpy as np


def _is_pow2(n):
    return n >= 2 and (n & (n - 1)) == 0


@lru_cache(maxsize=128)
def _roots(n, sign):
    # roots[t] = exp(sign * 2*pi*i * t / n); table reused by both DFT paths
    w = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    w.setflags(write=False)
    return w


@lru_cache(maxsize=64)
def _dft_matrix(n, sign):
    j = np.arange(n)
    # integer phase (j*k) % n keeps the argument small and the roots exact
    w = _roots(n, sign)[np.outer(j, j) % n]
    w.setflags(write=False)
    return w


@lru_cache(maxsize=64)
def _bit_reverse(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    rev.setflags(write=False)
    return rev


def _radix2(x, sign):
    m, n = x.shape
    y = x[:, _bit_reverse(n)]
    roots = _roots(n, sign)
    size = 2
    while size <= n:
        half = size // 2
        tw = roots[(n // size) * np.arange(half)]
        y = y.reshape(m, n // size, size)
        even = y[:, :, :half]
        odd = y[:, :, half:] * tw
        y = np.concatenate([even + odd, even - odd], axis=2)
        size *= 2
    return y.reshape(m, n)


def dft_last_axis(x, inverse):
    x = np.ascontiguousarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    sign = 1 if inverse else -1
    if _is_pow2(n):
        return _radix2(x, sign)
    return x @ _dft_matrix(n, sign).T


def fourier_quadrature(rows, nodes, weights, freqs, sign):
    rows = np.ascontiguousarray(rows, dtype=np.complex128)
    nodes = np.asarray(nodes, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    freqs = np.asarray(freqs, dtype=np.float64)
    m, _ = rows.shape
    weighted = rows * weights
    if m > 1 and np.all(freqs == freqs[0]):
        # shared frequency row: one phase matrix and one matmul for all rows
        phases = np.exp((sign * 2j * np.pi) * np.outer(freqs[0], nodes))
        return np.ascontiguousarray(weighted @ phases.T)
    out = np.empty((m, freqs.shape[1]), dtype=np.complex128)
    for i in range(m):
        phases = np.exp((sign * 2j * np.pi) * np.outer(freqs[i], nodes))
        out[i] = phases @ weighted[i]
    return out
