"""Compiled decoder inner-loop kernels.

Mirrors paccodes._kernels_py; see that module for the contract. Arrays are
C-contiguous, float64 for LLRs and uint8 for bits.
"""

import numpy as np

ctypedef unsigned char u8


def f_llr(double[:, ::1] lam):
    cdef Py_ssize_t P = lam.shape[0], half = lam.shape[1] // 2, p, i
    cdef double x, y, ax, ay, s
    out_arr = np.empty((P, half), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for p in range(P):
        for i in range(half):
            x = lam[p, i]
            y = lam[p, i + half]
            ax = -x if x < 0 else x
            ay = -y if y < 0 else y
            s = -1.0 if (x < 0) != (y < 0) else 1.0
            out[p, i] = s * (ax if ax < ay else ay)
    return out_arr


def g_llr(double[:, ::1] lam, u8[:, ::1] bits):
    cdef Py_ssize_t P = lam.shape[0], half = lam.shape[1] // 2, p, i
    out_arr = np.empty((P, half), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for p in range(P):
        for i in range(half):
            if bits[p, i]:
                out[p, i] = lam[p, i + half] - lam[p, i]
            else:
                out[p, i] = lam[p, i + half] + lam[p, i]
    return out_arr


def hard_rows(double[:, ::1] lam):
    cdef Py_ssize_t P = lam.shape[0], W = lam.shape[1], p, i
    out_arr = np.empty((P, W), dtype=np.uint8)
    cdef u8[:, ::1] out = out_arr
    for p in range(P):
        for i in range(W):
            out[p, i] = 1 if lam[p, i] < 0 else 0
    return out_arr


def penalty_rows(double[:, ::1] lam, u8[:, ::1] beta):
    cdef Py_ssize_t P = lam.shape[0], W = lam.shape[1], p, i
    cdef double acc, x
    cdef int hard
    out_arr = np.empty(P, dtype=np.float64)
    cdef double[::1] out = out_arr
    for p in range(P):
        acc = 0.0
        for i in range(W):
            x = lam[p, i]
            hard = 1 if x < 0 else 0
            if hard != beta[p, i]:
                acc += -x if x < 0 else x
        out[p] = acc
    return out_arr


def leaf_penalty(double[::1] lam, u8[::1] u):
    cdef Py_ssize_t P = lam.shape[0], p
    cdef double x
    cdef int hard
    out_arr = np.zeros(P, dtype=np.float64)
    cdef double[::1] out = out_arr
    for p in range(P):
        x = lam[p]
        hard = 1 if x < 0 else 0
        if hard != u[p]:
            out[p] = -x if x < 0 else x
    return out_arr


def polar_rows(object bits_arr):
    cdef u8[:, ::1] bits = bits_arr
    cdef Py_ssize_t P = bits.shape[0], W = bits.shape[1], p, h, j, i
    for p in range(P):
        h = 1
        while h < W:
            j = 0
            while j < W:
                for i in range(j, j + h):
                    bits[p, i] ^= bits[p, i + h]
                j += 2 * h
            h *= 2
    return bits_arr


def zero_input_bit(u8[:, ::1] state, u8[::1] gen_poly):
    cdef Py_ssize_t P = state.shape[0], m = gen_poly.shape[0] - 1, p, j
    cdef u8 acc
    out_arr = np.zeros(P, dtype=np.uint8)
    cdef u8[::1] out = out_arr
    for p in range(P):
        acc = 0
        for j in range(1, m + 1):
            if gen_poly[j]:
                acc ^= state[p, j - 1]
        out[p] = acc
    return out_arr


def zero_input_rows(u8[:, ::1] state, u8[::1] gen_poly, Py_ssize_t length):
    cdef Py_ssize_t P = state.shape[0], m = gen_poly.shape[0] - 1, p, t, j, span
    cdef u8 acc
    span = length if length < m else m
    out_arr = np.zeros((P, length), dtype=np.uint8)
    cdef u8[:, ::1] out = out_arr
    for p in range(P):
        for t in range(span):
            acc = 0
            for j in range(t + 1, m + 1):
                if gen_poly[j]:
                    acc ^= state[p, j - 1 - t]
            out[p, t] = acc
    return out_arr


def conv_inverse_rows(u8[:, ::1] y, u8[::1] gen_poly):
    cdef Py_ssize_t P = y.shape[0], W = y.shape[1], m = gen_poly.shape[0] - 1, p, i, j
    cdef u8 acc
    out_arr = np.empty((P, W), dtype=np.uint8)
    cdef u8[:, ::1] v = out_arr
    for p in range(P):
        for i in range(W):
            acc = y[p, i]
            for j in range(1, m + 1):
                if j > i:
                    break
                if gen_poly[j]:
                    acc ^= v[p, i - j]
            v[p, i] = acc
    return out_arr
