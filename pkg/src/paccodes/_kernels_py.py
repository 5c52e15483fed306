"""Pure-numpy implementations of the decoder inner-loop kernels.

Same call signatures as the compiled module paccodes._ckernels; these are
the fallback when the extension is not built (see paccodes.kernels).
All 2-D arrays are (paths, width), C-contiguous, float64 for LLRs and
uint8 for bits.
"""

from __future__ import annotations

import numpy as np


def f_llr(lam: np.ndarray) -> np.ndarray:
    """Min-sum check update of the node halves: sign(a)sign(b)min(|a|,|b|).

    `lam` is the full (paths, width) node LLR block; the output combines
    column i with column i + width/2. sign(0) counts as +1.
    """
    half = lam.shape[1] // 2
    a, b = lam[:, :half], lam[:, half:]
    sign = np.where((a < 0) != (b < 0), -1.0, 1.0)
    return sign * np.minimum(np.abs(a), np.abs(b))


def g_llr(lam: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Partial-sum-corrected update of the node halves: (1-2*bits)*a + b."""
    half = lam.shape[1] // 2
    a, b = lam[:, :half], lam[:, half:]
    return (1.0 - 2.0 * bits) * a + b


def hard_rows(lam: np.ndarray) -> np.ndarray:
    """Hard decisions, one row per path; negative LLR maps to bit 1."""
    return (lam < 0).astype(np.uint8)


def penalty_rows(lam: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Per-row sum of |lam| where beta defies the hard decision of lam."""
    disagree = (lam < 0) != beta.astype(bool)
    return np.sum(np.abs(lam), axis=1, where=disagree, initial=0.0)


def leaf_penalty(lam: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Scalar-leaf penalty per path: |lam| if u defies lam's sign, else 0."""
    return np.where((lam < 0) != u.astype(bool), np.abs(lam), 0.0)


def polar_rows(bits: np.ndarray) -> np.ndarray:
    """In-place butterfly transform of every row; returns the input array."""
    P, width = bits.shape
    h = 1
    while h < width:
        view = bits.reshape(P, width // (2 * h), 2 * h)
        view[:, :, :h] ^= view[:, :, h:]
        h *= 2
    return bits


def zero_input_bit(state: np.ndarray, gen_poly: np.ndarray) -> np.ndarray:
    """Next output bit of each path's register when the input bit is 0."""
    m = gen_poly.size - 1
    if m == 0:
        return np.zeros(state.shape[0], dtype=np.uint8)
    return np.bitwise_xor.reduce(state & gen_poly[1:], axis=1)


def zero_input_rows(state: np.ndarray, gen_poly: np.ndarray, length: int) -> np.ndarray:
    """Zero-input register response of each path over `length` steps.

    Only the first min(length, m) outputs can be nonzero; the response is
    state @ M over GF(2) with M[k, t] = g[k+1+t].
    """
    P, m = state.shape
    out = np.zeros((P, length), dtype=np.uint8)
    span = min(length, m)
    if span:
        M = np.zeros((m, span), dtype=np.uint8)
        for t in range(span):
            M[: m - t, t] = gen_poly[1 + t :]
        out[:, :span] = (state.astype(np.uint32) @ M.astype(np.uint32)) & 1
    return out


def conv_inverse_rows(y: np.ndarray, gen_poly: np.ndarray) -> np.ndarray:
    """Feedback recurrence v_i = y_i + sum g_j v_{i-j}, one row per path."""
    taps = np.flatnonzero(gen_poly[1:]) + 1
    v = np.array(y, dtype=np.uint8)
    for i in range(1, v.shape[1]):
        for j in taps:
            if j > i:
                break
            v[:, i] ^= v[:, i - j]
    return v
