"""PAC code definition and encoding primitives.

A PAC code chains a rate-1 convolutional precoder into the polar transform:
the K data bits are spread over an N-length carrier vector v (rate
profiling), v is run through the shift-register convolution to give u, and
the codeword is c = u * F^(x)n with F = [[1,0],[1,1]].

Bit vectors are numpy uint8 arrays throughout. Shift-register states are
stored most-recent input first, matching the usual hardware register layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "CodeSpec",
    "rate_profile",
    "conv_1b_trans",
    "conv_trans",
    "polar_transform",
    "pac_encode",
    "inverse_gen_poly",
    "conv_inverse",
    "conv_inverse_opcount",
    "crc_attach",
    "crc_check",
    "parse_gen_poly",
    "load_profile",
    "bundled_profiles",
]


def as_bits(x, length: int | None = None) -> np.ndarray:
    """Coerce to a 1-D uint8 array of 0/1 values, optionally checking length."""
    b = np.asarray(x, dtype=np.uint8)
    if b.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {b.shape}")
    if np.any(b > 1):
        raise ValueError("bit vector contains values other than 0/1")
    if length is not None and b.size != length:
        raise ValueError(f"expected {length} bits, got {b.size}")
    return b


def _is_pow2(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class CodeSpec:
    """Static definition of a PAC(N, K, info_set, gen_poly) code.

    n          tree depth, N = 2**n
    info_set   sorted indices of the K data-carrying positions
    gen_poly   convolution taps (g0, ..., gm), g0 = gm = 1
    crc_poly   optional CRC divisor (MSB first, leading 1 included)
    """

    n: int
    info_set: tuple[int, ...]
    gen_poly: tuple[int, ...]
    crc_poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        idx = tuple(int(i) for i in self.info_set)
        if list(idx) != sorted(set(idx)):
            raise ValueError("info_set must be strictly ascending")
        if not idx:
            raise ValueError("info_set is empty")
        if idx[0] < 0 or idx[-1] >= self.N:
            raise ValueError(f"info_set indices must lie in [0, {self.N})")
        g = tuple(int(b) for b in self.gen_poly)
        if any(b not in (0, 1) for b in g):
            raise ValueError("gen_poly must be a 0/1 sequence")
        if g[0] != 1 or g[-1] != 1:
            raise ValueError("gen_poly needs g0 = 1 and gm = 1")
        if self.crc_poly is not None:
            c = tuple(int(b) for b in self.crc_poly)
            if len(c) < 2 or c[0] != 1:
                raise ValueError("crc_poly must start with 1 and have degree >= 1")
            object.__setattr__(self, "crc_poly", c)
        object.__setattr__(self, "info_set", idx)
        object.__setattr__(self, "gen_poly", g)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def K(self) -> int:
        return len(self.info_set)

    @property
    def m(self) -> int:
        """Shift-register length (constraint length minus one)."""
        return len(self.gen_poly) - 1

    @property
    def crc_len(self) -> int:
        return 0 if self.crc_poly is None else len(self.crc_poly) - 1

    @property
    def payload_len(self) -> int:
        """Number of data bits the encoder accepts (K minus CRC bits)."""
        return self.K - self.crc_len

    @cached_property
    def info_mask(self) -> np.ndarray:
        """Boolean mask over 0..N-1, True at data-carrying positions."""
        mask = np.zeros(self.N, dtype=bool)
        mask[list(self.info_set)] = True
        return mask

    @classmethod
    def create(cls, N: int, info_set, gen_poly, crc_poly=None) -> "CodeSpec":
        """Build a spec from a block length instead of a tree depth."""
        if not _is_pow2(N):
            raise ValueError(f"N must be a power of two, got {N}")
        return cls(
            n=int(N).bit_length() - 1,
            info_set=tuple(info_set),
            gen_poly=tuple(gen_poly),
            crc_poly=None if crc_poly is None else tuple(crc_poly),
        )


# --------------------------------------------------------------------------
# encoding chain


def rate_profile(d, spec: CodeSpec) -> np.ndarray:
    """Place the data bits at the info-set positions of a length-N carrier."""
    d = as_bits(d, spec.K)
    v = np.zeros(spec.N, dtype=np.uint8)
    v[list(spec.info_set)] = d
    return v


def conv_1b_trans(v: int, state, gen_poly) -> tuple[int, np.ndarray]:
    """One shift-register step: returns (output bit, next state).

    The output is v*g0 xor the state bits selected by the remaining taps;
    the next state is the input pushed in front of the oldest m-1 bits.
    """
    g = np.asarray(gen_poly, dtype=np.uint8)
    m = g.size - 1
    state = as_bits(state, m)
    u = (int(v) & int(g[0])) ^ (int(np.bitwise_xor.reduce(state & g[1:])) if m else 0)
    if m == 0:
        return u, state
    nxt = np.empty(m, dtype=np.uint8)
    nxt[0] = v
    nxt[1:] = state[:-1]
    return u, nxt


def conv_trans(v, gen_poly, state=None) -> tuple[np.ndarray, np.ndarray]:
    """Convolve a whole word through the precoder: u_i = sum_j g_j v_{i-j}.

    `state` supplies the history bits v_{-1}, v_{-2}, ... (most recent
    first); it defaults to all-zero. Returns (u, final state). With zero
    state this equals multiplication by the upper-triangular Toeplitz
    matrix whose first row is gen_poly.
    """
    g = np.asarray(gen_poly, dtype=np.uint8)
    m = g.size - 1
    v = as_bits(v)
    if state is None:
        state = np.zeros(m, dtype=np.uint8)
    else:
        state = as_bits(state, m)
    # history-prefixed input, chronological order
    w = np.concatenate([state[::-1], v])
    u = np.zeros(v.size, dtype=np.uint8)
    for j in np.flatnonzero(g):
        u ^= w[m - j : m - j + v.size]
    out_state = w[::-1][:m].copy()
    return u, out_state


def polar_transform(u) -> np.ndarray:
    """Apply the butterfly network for F^(x)n; self-inverse over GF(2)."""
    x = np.array(u, dtype=np.uint8)
    if x.ndim != 1 or not _is_pow2(x.size):
        raise ValueError(f"length must be a power of two, got shape {x.shape}")
    h = 1
    while h < x.size:
        for j in range(0, x.size, 2 * h):
            x[j : j + h] ^= x[j + h : j + 2 * h]
        h *= 2
    return x


def pac_encode(d, spec: CodeSpec) -> np.ndarray:
    """Full encoder: rate profile, convolve, polar transform.

    `d` carries spec.payload_len bits; when a CRC is configured the
    checksum is appended before profiling.
    """
    d = as_bits(d, spec.payload_len)
    if spec.crc_poly is not None:
        d = crc_attach(d, spec.crc_poly)
    v = rate_profile(d, spec)
    u, _ = conv_trans(v, spec.gen_poly)
    return polar_transform(u)


# --------------------------------------------------------------------------
# inverse convolution


def inverse_gen_poly(gen_poly, N: int) -> np.ndarray:
    """First N coefficients (alpha_0, ..., alpha_{N-1}) of the inverse taps.

    alpha is the first row of the inverse of the N x N Toeplitz precoding
    matrix. It satisfies alpha_0 = 1 and the feedback recurrence
    alpha_j = sum_{i=1..min(j,m)} g_i alpha_{j-i} over GF(2); the length-N
    prefix is shared by every longer inverse (nested structure).
    """
    g = np.asarray(gen_poly, dtype=np.uint8)
    if g[0] != 1:
        raise ValueError("gen_poly is not invertible: g0 must be 1")
    m = g.size - 1
    taps = [int(j) for j in np.flatnonzero(g[1:]) + 1]
    alpha = np.zeros(N, dtype=np.uint8)
    alpha[0] = 1
    for j in range(1, N):
        acc = 0
        for i in taps:
            if i > j:
                break
            acc ^= alpha[j - i]
        alpha[j] = acc
    return alpha


def conv_inverse(y, gen_poly) -> np.ndarray:
    """Undo the zero-state convolution: the v with conv_trans(v) = y.

    Uses the m-tap feedback recurrence v_i = y_i + sum g_j v_{i-j}, so the
    cost is O(N*m) bit operations rather than a dense multiply by the
    inverse polynomial.
    """
    g = np.asarray(gen_poly, dtype=np.uint8)
    if g[0] != 1:
        raise ValueError("gen_poly is not invertible: g0 must be 1")
    y = as_bits(y)
    taps = [int(j) for j in np.flatnonzero(g[1:]) + 1]
    v = np.zeros(y.size, dtype=np.uint8)
    for i in range(y.size):
        acc = int(y[i])
        for j in taps:
            if j > i:
                break
            acc ^= int(v[i - j])
        v[i] = acc
    return v


def conv_inverse_opcount(y, gen_poly) -> tuple[np.ndarray, int]:
    """conv_inverse with an explicit count of the XOR/tap operations.

    Instrumented twin used to verify the linear-in-N cost of the feedback
    recurrence; the returned word is identical to conv_inverse's.
    """
    g = np.asarray(gen_poly, dtype=np.uint8)
    if g[0] != 1:
        raise ValueError("gen_poly is not invertible: g0 must be 1")
    y = as_bits(y)
    taps = [int(j) for j in np.flatnonzero(g[1:]) + 1]
    v = np.zeros(y.size, dtype=np.uint8)
    ops = 0
    for i in range(y.size):
        acc = int(y[i])
        ops += 1
        for j in taps:
            if j > i:
                break
            acc ^= int(v[i - j])
            ops += 1
        v[i] = acc
    return v, ops


# --------------------------------------------------------------------------
# CRC


def crc_attach(d, crc_poly) -> np.ndarray:
    """Append the GF(2) polynomial-division remainder of d to d."""
    d = as_bits(d)
    if d.size < 1:
        raise ValueError("CRC payload must be at least one bit")
    p = as_bits(crc_poly)
    r = p.size - 1
    w = np.concatenate([d, np.zeros(r, dtype=np.uint8)])
    for i in range(d.size):
        if w[i]:
            w[i : i + r + 1] ^= p
    return np.concatenate([d, w[d.size :]])


def crc_check(word, crc_poly) -> bool:
    """True when the attached word divides cleanly by the CRC polynomial."""
    w = as_bits(word).copy()
    p = as_bits(crc_poly)
    r = p.size - 1
    if w.size <= r:
        raise ValueError("word shorter than the CRC remainder")
    for i in range(w.size - r):
        if w[i]:
            w[i : i + r + 1] ^= p
    return not w[-r:].any() if r else True


# --------------------------------------------------------------------------
# profile and polynomial I/O


def parse_gen_poly(text: str) -> tuple[int, ...]:
    """Parse a generator polynomial bit string such as "1011011" (g0 first)."""
    s = text.strip()
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"gen_poly string must be nonempty 0/1 digits, got {text!r}")
    return tuple(int(ch) for ch in s)


def _profiles_dir() -> Path:
    return Path(__file__).parent / "profiles"


def bundled_profiles() -> list[str]:
    """Names of the rate profiles shipped with the package."""
    return sorted(p.stem for p in _profiles_dir().glob("*.profile"))


def load_profile(source) -> tuple[int, ...]:
    """Read an information set from a file path, bundled name, or JSON array.

    Accepted file contents: a JSON array of indices, or newline-separated
    ascending integers ('#' starts a comment).
    """
    path = Path(source)
    if not path.exists():
        bundled = _profiles_dir() / f"{source}.profile"
        if bundled.exists():
            path = bundled
        else:
            raise ValueError(f"profile not found: {source!r}")
    text = path.read_text()
    stripped = text.lstrip()
    if stripped.startswith("["):
        idx = [int(i) for i in json.loads(text)]
    else:
        idx = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                idx.append(int(line))
    if not idx:
        raise ValueError(f"profile {source!r} contains no indices")
    if idx != sorted(set(idx)):
        raise ValueError(f"profile {source!r} must list strictly ascending indices")
    return tuple(idx)
