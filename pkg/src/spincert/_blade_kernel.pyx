# cython: language_level=3
"""Compiled blade product kernel.

Same contract as `_kernel_py`: sparse blade-mask term products with
transposition signs and metric contractions. This is the hot loop behind
rotor products, adjoint conjugation and path lifting.
"""

from libc.stdlib cimport calloc, free, malloc

import numpy as np

BACKEND = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _swap_parity(unsigned long long a, unsigned long long b) nogil:
    cdef int count = 0
    a >>= 1
    while a:
        count += __builtin_popcountll(a & b)
        a >>= 1
    return count & 1


cdef inline double _blade_factor(unsigned long long a, unsigned long long b,
                                 const double[:] diag) nogil:
    cdef double f = -1.0 if _swap_parity(a, b) else 1.0
    cdef unsigned long long common = a & b
    cdef Py_ssize_t j = 0
    while common:
        if common & 1:
            f *= diag[j]
        common >>= 1
        j += 1
    return f


def swap_parity(a, b):
    return _swap_parity(a, b)


def blade_factor(a, b, diag):
    cdef const double[:] d = np.ascontiguousarray(diag, dtype=np.float64)
    return _blade_factor(a, b, d)


def mul_terms(masks_a, coeffs_a, masks_b, coeffs_b, diag, double eps):
    """Sparse product of two term lists; masks ascending, tiny coefficients dropped."""
    cdef const long long[:] ma = np.ascontiguousarray(masks_a, dtype=np.int64)
    cdef const double complex[:] ca = np.ascontiguousarray(coeffs_a, dtype=np.complex128)
    cdef const long long[:] mb = np.ascontiguousarray(masks_b, dtype=np.int64)
    cdef const double complex[:] cb = np.ascontiguousarray(coeffs_b, dtype=np.complex128)
    cdef const double[:] d = np.ascontiguousarray(diag, dtype=np.float64)

    cdef Py_ssize_t n = d.shape[0]
    if n > 24:
        raise ValueError("blade kernel supports at most 24 generators")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t na = ma.shape[0], nb = mb.shape[0]
    cdef Py_ssize_t i, j, t, nkeep, ntouched = 0
    cdef unsigned long long key, a

    cdef double complex* acc = <double complex*>malloc(size * sizeof(double complex))
    cdef char* touched = <char*>calloc(size, sizeof(char))
    cdef long long* order = <long long*>malloc(size * sizeof(long long))
    if acc == NULL or touched == NULL or order == NULL:
        free(acc); free(touched); free(order)
        raise MemoryError()

    with nogil:
        for i in range(na):
            a = <unsigned long long>ma[i]
            for j in range(nb):
                key = a ^ <unsigned long long>mb[j]
                if not touched[key]:
                    touched[key] = 1
                    order[ntouched] = <long long>key
                    ntouched += 1
                    acc[key] = 0
                acc[key] = acc[key] + ca[i] * cb[j] * _blade_factor(
                    a, <unsigned long long>mb[j], d)

    cdef list keep = []
    cdef double complex v
    for t in range(ntouched):
        key = <unsigned long long>order[t]
        v = acc[key]
        if v != 0 and abs(v) >= eps:
            keep.append((key, v))
    free(acc); free(touched); free(order)

    keep.sort()
    nkeep = len(keep)
    out_m = np.empty(nkeep, dtype=np.int64)
    out_c = np.empty(nkeep, dtype=np.complex128)
    for t in range(nkeep):
        out_m[t] = keep[t][0]
        out_c[t] = keep[t][1]
    return out_m, out_c
