# cython: language_level=3
"""Compiled transform kernels.

Semantics mirror ``tauharm._kernels._ref`` exactly; that module is the
fallback when this extension is not built.
"""

from libc.math cimport cos, sin, M_PI

import numpy as np

ctypedef double complex cplx


cdef inline Py_ssize_t _bitrev(Py_ssize_t v, int bits):
    cdef Py_ssize_t r = 0
    cdef int t
    for t in range(bits):
        r = (r << 1) | (v & 1)
        v >>= 1
    return r


cdef void _naive(const cplx[:, ::1] x, cplx[:, ::1] out, cplx[::1] roots):
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t n = x.shape[1]
    cdef Py_ssize_t i, j, k, idx
    cdef cplx acc
    for i in range(m):
        for j in range(n):
            acc = 0
            idx = 0
            for k in range(n):
                acc = acc + x[i, k] * roots[idx]
                idx += j
                if idx >= n:
                    idx -= n
            out[i, j] = acc


cdef void _radix2(const cplx[:, ::1] x, cplx[:, ::1] out, cplx[::1] roots):
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t n = x.shape[1]
    cdef int bits = 0
    while (1 << bits) < n:
        bits += 1
    cdef Py_ssize_t i, j, size, half, start, t
    cdef cplx w, u, v
    for i in range(m):
        for j in range(n):
            out[i, _bitrev(j, bits)] = x[i, j]
        size = 2
        while size <= n:
            half = size >> 1
            start = 0
            while start < n:
                for t in range(half):
                    w = roots[(n // size) * t]
                    u = out[i, start + t]
                    v = out[i, start + t + half] * w
                    out[i, start + t] = u + v
                    out[i, start + t + half] = u - v
                start += size
            size <<= 1


def dft_last_axis(x, inverse):
    arr = np.ascontiguousarray(x, dtype=np.complex128)
    cdef Py_ssize_t m = arr.shape[0]
    cdef Py_ssize_t n = arr.shape[1]
    if n == 1:
        return arr.copy()
    out = np.empty((m, n), dtype=np.complex128)
    cdef double sign = 1.0 if inverse else -1.0
    roots_arr = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] roots = roots_arr
    cdef Py_ssize_t t
    cdef double ang
    for t in range(n):
        ang = sign * 2.0 * M_PI * t / n
        roots[t] = cos(ang) + 1j * sin(ang)
    if (n & (n - 1)) == 0:
        _radix2(arr, out, roots)
    else:
        _naive(arr, out, roots)
    return out


def fourier_quadrature(rows, nodes, weights, freqs, sign):
    rows_c = np.ascontiguousarray(rows, dtype=np.complex128)
    nodes_c = np.ascontiguousarray(nodes, dtype=np.float64)
    weights_c = np.ascontiguousarray(weights, dtype=np.float64)
    freqs_c = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef const cplx[:, ::1] rv = rows_c
    cdef const double[::1] bv = nodes_c
    cdef const double[::1] wv = weights_c
    cdef const double[:, ::1] fv = freqs_c
    cdef Py_ssize_t m = rv.shape[0]
    cdef Py_ssize_t nb = rv.shape[1]
    cdef Py_ssize_t nf = fv.shape[1]
    out = np.empty((m, nf), dtype=np.complex128)
    cdef cplx[:, ::1] ov = out
    buf = np.empty(nb, dtype=np.complex128)
    cdef cplx[::1] wr = buf
    cdef double sgn = 2.0 * M_PI * sign
    cdef double step = bv[1] - bv[0] if nb > 1 else 0.0
    cdef Py_ssize_t i, l, j
    cdef double f, ang
    cdef cplx rot, z, acc
    for i in range(m):
        for j in range(nb):
            wr[j] = rv[i, j] * wv[j]
        for l in range(nf):
            f = fv[i, l]
            ang = sgn * f * step
            rot = cos(ang) + 1j * sin(ang)
            acc = 0
            z = 1
            for j in range(nb):
                # uniform nodes assumed: phase recurrence, resynced each block
                if (j & 127) == 0:
                    ang = sgn * f * bv[j]
                    z = cos(ang) + 1j * sin(ang)
                acc = acc + wr[j] * z
                z = z * rot
            ov[i, l] = acc
    return out
