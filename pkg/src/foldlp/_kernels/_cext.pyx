# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython twins of the _purekern kernels; see that module for semantics."""

import numpy as np

cimport numpy as cnp
from libc.math cimport log2, isnan
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

BACKEND = "cython"

GAIN_EPS = 1e-12
cdef double _EPS = 1e-12


cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    static inline unsigned long long foldlp_popcnt64(unsigned long long x)
    { return __popcnt64(x); }
    #else
    static inline unsigned long long foldlp_popcnt64(unsigned long long x)
    { return __builtin_popcountll(x); }
    #endif
    """
    unsigned long long foldlp_popcnt64(unsigned long long x) nogil


def popcount(uint64_t[::1] mask):
    cdef Py_ssize_t i
    cdef uint64_t acc = 0
    for i in range(mask.shape[0]):
        acc += foldlp_popcnt64(mask[i])
    return int(acc)


def and_popcount(uint64_t[::1] a, uint64_t[::1] b):
    cdef Py_ssize_t i
    cdef uint64_t acc = 0
    for i in range(a.shape[0]):
        acc += foldlp_popcnt64(a[i] & b[i])
    return int(acc)


def score_masks(uint64_t[:, ::1] stack, uint64_t[::1] pos, uint64_t[::1] neg):
    cdef Py_ssize_t k = stack.shape[0]
    cdef Py_ssize_t w = stack.shape[1]
    p1 = np.zeros(k, dtype=np.int64)
    n1 = np.zeros(k, dtype=np.int64)
    cdef int64_t[::1] p1v = p1
    cdef int64_t[::1] n1v = n1
    cdef Py_ssize_t i, j
    cdef uint64_t word, cp, cn
    with nogil:
        for i in range(k):
            cp = 0
            cn = 0
            for j in range(w):
                word = stack[i, j]
                cp += foldlp_popcnt64(word & pos[j])
                cn += foldlp_popcnt64(word & neg[j])
            p1v[i] = <int64_t> cp
            n1v[i] = <int64_t> cn
    return p1, n1


cdef inline double _xlog2x(double a) nogil:
    if a > 0:
        return a * log2(a)
    return 0.0


cdef inline double _weighted(double t, double p, double n) nogil:
    return _xlog2x(t) - _xlog2x(p) - _xlog2x(n)


def threshold_sweep(double[::1] values, uint8_t[::1] is_pos):
    cdef Py_ssize_t t = values.shape[0]
    cdef Py_ssize_t i
    cdef int64_t total_p = 0
    for i in range(t):
        total_p += is_pos[i]
    cdef int64_t total_n = t - total_p
    if t == 0 or total_p == 0 or total_n == 0:
        return (float("nan"), 0.0, 0, 0)

    cdef double base = _weighted(<double> t, <double> total_p, <double> total_n)
    cdef double best_gain = 0.0
    cdef double gain, p_le, n_le, t_le
    cdef int64_t cum_p = 0
    cdef int64_t best_p = -1, best_n = -1
    cdef double best_v = 0.0
    cdef bint found = False
    for i in range(t - 1):
        cum_p += is_pos[i]
        if values[i] == values[i + 1]:
            continue
        t_le = <double> (i + 1)
        p_le = <double> cum_p
        n_le = t_le - p_le
        gain = (base
                - _weighted(t_le, p_le, n_le)
                - _weighted(<double> t - t_le, <double> total_p - p_le, <double> total_n - n_le)) / t
        # strictly-better rule keeps the lowest threshold on ties
        if gain > best_gain + _EPS:
            best_gain = gain
            best_v = values[i]
            best_p = cum_p
            best_n = (i + 1) - cum_p
            found = True
    if not found or best_gain <= _EPS:
        return (float("nan"), 0.0, 0, 0)
    return (best_v, best_gain, int(best_p), int(best_n))
