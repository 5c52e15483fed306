"""Slow, obviously-correct reference implementations used for cross-checks.

Everything here is dense-matrix or exhaustive-enumeration: GF(2) matrices
for the precoder and polar transform, Gauss-Jordan inversion, brute-force
maximum-likelihood decoding, and a leaf-by-leaf path-metric replay. The
fast paths in the rest of the package are tested against these routines,
and the CLI exposes them via --engine reference.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .codec import CodeSpec, as_bits, pac_encode

__all__ = [
    "gcc_matrix",
    "polar_matrix",
    "gf2_matmul",
    "gf2_inverse",
    "ml_decode",
    "leaf_pm_replay",
    "best_words",
    "best_even_words",
    "word_penalty",
]

ML_MAX_K = 20


def gcc_matrix(gen_poly, N: int) -> np.ndarray:
    """N x N upper-triangular Toeplitz matrix with first row gen_poly."""
    g = np.asarray(gen_poly, dtype=np.uint8)
    if g[0] != 1:
        raise ValueError("gen_poly must have g0 = 1")
    M = np.zeros((N, N), dtype=np.uint8)
    for j, bit in enumerate(g[: N]):
        if bit:
            M += np.eye(N, k=j, dtype=np.uint8)
    return M


def polar_matrix(n: int) -> np.ndarray:
    """n-fold Kronecker power of the kernel [[1,0],[1,1]]."""
    F = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    M = np.array([[1]], dtype=np.uint8)
    for _ in range(n):
        M = np.kron(M, F)
    return M


def gf2_matmul(a, b) -> np.ndarray:
    """Matrix (or vector-matrix) product over GF(2)."""
    prod = np.asarray(a, dtype=np.uint32) @ np.asarray(b, dtype=np.uint32)
    return (prod & 1).astype(np.uint8)


def gf2_inverse(M) -> np.ndarray:
    """Invert a square GF(2) matrix by Gauss-Jordan elimination."""
    M = np.asarray(M, dtype=np.uint8)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    work = np.concatenate([M.copy(), np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivots = np.flatnonzero(work[col:, col])
        if pivots.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        pivot = col + pivots[0]
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        rows = np.flatnonzero(work[:, col])
        rows = rows[rows != col]
        work[rows] ^= work[col]
    return work[:, n:]


def word_penalty(llr, word) -> float:
    """Sum of |llr| over the positions where the word defies the hard decision."""
    llr = np.asarray(llr, dtype=np.float64)
    word = as_bits(word, llr.size)
    disagree = (llr < 0) != word.astype(bool)
    return float(np.abs(llr[disagree]).sum())


def ml_decode(llr, spec: CodeSpec) -> tuple[np.ndarray, float]:
    """Exhaustive minimum-penalty decoding over all data words.

    Scores every codeword with word_penalty and returns the best
    (data word, penalty); ties go to the numerically smallest data word.
    Guarded to K <= 20; the cost is 2^K encodes.
    """
    if spec.K > ML_MAX_K:
        raise ValueError(f"ml_decode is limited to K <= {ML_MAX_K}, got K={spec.K}")
    if spec.crc_poly is not None:
        raise ValueError("ml_decode does not model CRC-augmented codes")
    llr = np.asarray(llr, dtype=np.float64)
    best_d, best_pen = None, np.inf
    d = np.zeros(spec.K, dtype=np.uint8)
    for value in range(1 << spec.K):
        for b in range(spec.K):
            d[b] = (value >> (spec.K - 1 - b)) & 1
        pen = word_penalty(llr, pac_encode(d, spec))
        if pen < best_pen:
            best_d, best_pen = d.copy(), pen
    return best_d, best_pen


def leaf_pm_replay(llr, u) -> float:
    """Total Eq.-style leaf penalty of forcing the bits u through min-sum SC.

    Recursively applies the min-sum f/g updates, charging |llr| at each leaf
    whose forced bit contradicts the leaf LLR's sign. This is the
    leaf-granularity ground truth that the node-level metric must match.
    """
    llr = np.asarray(llr, dtype=np.float64)
    u = as_bits(u, llr.size)

    def walk(lam, bits):
        if bits.size == 1:
            pen = float(abs(lam[0])) if ((lam[0] < 0) != bool(bits[0])) else 0.0
            return pen, bits
        half = bits.size // 2
        a, b = lam[:half], lam[half:]
        lam_l = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        pen_l, beta_l = walk(lam_l, bits[:half])
        lam_r = (1.0 - 2.0 * beta_l) * a + b
        pen_r, beta_r = walk(lam_r, bits[half:])
        return pen_l + pen_r, np.concatenate([beta_l ^ beta_r, beta_r])

    pen, _ = walk(llr, u)
    return pen


def _ranked_flip_sets(llr, parity: int | None):
    """All flip sets against the hard decision, cheapest first.

    Ordering key: (penalty, number of flips, flip positions). With
    parity=0/1 only flip sets of that size parity are produced.
    """
    llr = np.asarray(llr, dtype=np.float64)
    mag = np.abs(llr)
    n = llr.size
    sets = []
    for size in range(n + 1):
        if parity is not None and size % 2 != parity % 2:
            continue
        for pos in combinations(range(n), size):
            sets.append((float(mag[list(pos)].sum()), size, pos))
    sets.sort()
    return sets


def best_words(llr, count: int) -> np.ndarray:
    """The `count` lowest-penalty words for an unconstrained node, in order."""
    llr = np.asarray(llr, dtype=np.float64)
    hard = (llr < 0).astype(np.uint8)
    out = np.tile(hard, (min(count, 1 << llr.size), 1))
    for row, (_, _, pos) in zip(out, _ranked_flip_sets(llr, None)):
        row[list(pos)] ^= 1
    return out


def best_even_words(llr, count: int) -> np.ndarray:
    """The `count` lowest-penalty even-parity words, in order."""
    llr = np.asarray(llr, dtype=np.float64)
    hard = (llr < 0).astype(np.uint8)
    flip_parity = int(hard.sum()) % 2
    limit = min(count, 1 << max(llr.size - 1, 0))
    out = np.tile(hard, (limit, 1))
    for row, (_, _, pos) in zip(out, _ranked_flip_sets(llr, flip_parity)):
        row[list(pos)] ^= 1
    return out
