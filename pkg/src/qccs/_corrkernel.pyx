# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled correlation kernels (direct shift-by-shift summation).

Contracts match ``qccs._corr_py`` exactly; see that module's docstring.
Inputs must be C-contiguous (complex128 for the correlation kernels,
int64 for the phase kernel); the driver in ``qccs.correlation``
guarantees that.
"""

import numpy as np


def xcorr(const double complex[::1] a, const double complex[::1] b):
    cdef Py_ssize_t length = a.shape[0]
    if b.shape[0] != length:
        raise ValueError("xcorr requires equal-length vectors")
    out = np.zeros(2 * length - 1, dtype=np.complex128)
    re = np.zeros(2 * length - 1, dtype=np.float64)
    im = np.zeros(2 * length - 1, dtype=np.float64)
    cdef double[::1] re_v = re
    cdef double[::1] im_v = im
    cdef Py_ssize_t tau, alpha, lo_a, n, k
    cdef double ar, ai, br, bi, acc_re, acc_im
    with nogil:
        for tau in range(-(length - 1), length):
            if tau >= 0:
                lo_a = tau
                n = length - tau
            else:
                lo_a = 0
                n = length + tau
            acc_re = 0.0
            acc_im = 0.0
            for alpha in range(n):
                if tau >= 0:
                    ar = a[alpha + tau].real
                    ai = a[alpha + tau].imag
                    br = b[alpha].real
                    bi = b[alpha].imag
                else:
                    ar = a[alpha].real
                    ai = a[alpha].imag
                    br = b[alpha - tau].real
                    bi = b[alpha - tau].imag
                acc_re += ar * br + ai * bi
                acc_im += ai * br - ar * bi
            k = length - 1 + tau
            re_v[k] = acc_re
            im_v[k] = acc_im
    out.real = re
    out.imag = im
    return out


def code_xcorr(const double complex[:, ::1] a_mat, const double complex[:, ::1] b_mat):
    cdef Py_ssize_t rows = a_mat.shape[0]
    cdef Py_ssize_t length = a_mat.shape[1]
    if b_mat.shape[0] != rows or b_mat.shape[1] != length:
        raise ValueError("code_xcorr requires matrices of identical shape")
    out = np.zeros(2 * length - 1, dtype=np.complex128)
    re = np.zeros(2 * length - 1, dtype=np.float64)
    im = np.zeros(2 * length - 1, dtype=np.float64)
    cdef double[::1] re_v = re
    cdef double[::1] im_v = im
    cdef Py_ssize_t tau, alpha, r, n, k
    cdef double ar, ai, br, bi, acc_re, acc_im
    with nogil:
        for tau in range(-(length - 1), length):
            n = length - tau if tau >= 0 else length + tau
            acc_re = 0.0
            acc_im = 0.0
            for r in range(rows):
                if tau >= 0:
                    for alpha in range(n):
                        ar = a_mat[r, alpha + tau].real
                        ai = a_mat[r, alpha + tau].imag
                        br = b_mat[r, alpha].real
                        bi = b_mat[r, alpha].imag
                        acc_re += ar * br + ai * bi
                        acc_im += ai * br - ar * bi
                else:
                    for alpha in range(n):
                        ar = a_mat[r, alpha].real
                        ai = a_mat[r, alpha].imag
                        br = b_mat[r, alpha - tau].real
                        bi = b_mat[r, alpha - tau].imag
                        acc_re += ar * br + ai * bi
                        acc_im += ai * br - ar * bi
            k = length - 1 + tau
            re_v[k] = acc_re
            im_v[k] = acc_im
    out.real = re
    out.imag = im
    return out


def phase_diff_counts(const long long[:, ::1] a_ph, const long long[:, ::1] b_ph, int lam):
    cdef Py_ssize_t rows = a_ph.shape[0]
    cdef Py_ssize_t length = a_ph.shape[1]
    if b_ph.shape[0] != rows or b_ph.shape[1] != length:
        raise ValueError("phase_diff_counts requires matrices of identical shape")
    if lam < 1:
        raise ValueError("lam must be positive")
    out = np.zeros((2 * length - 1, lam), dtype=np.int64)
    cdef long long[:, ::1] out_v = out
    cdef Py_ssize_t tau, alpha, r, n, k
    cdef long long pa, pb, d
    with nogil:
        for tau in range(-(length - 1), length):
            n = length - tau if tau >= 0 else length + tau
            k = length - 1 + tau
            for r in range(rows):
                for alpha in range(n):
                    if tau >= 0:
                        pa = a_ph[r, alpha + tau]
                        pb = b_ph[r, alpha]
                    else:
                        pa = a_ph[r, alpha]
                        pb = b_ph[r, alpha - tau]
                    if pa >= 0 and pb >= 0:
                        d = (pa - pb) % lam
                        if d < 0:
                            d += lam
                        out_v[k, d] += 1
    return out
