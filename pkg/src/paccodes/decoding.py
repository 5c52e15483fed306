"""Tree-recursive SC / SCL decoding of PAC codes.

The decoder walks the balanced binary tree over the codeword, combining
LLRs with the min-sum f/g rules on the way down and partial sums on the
way up. Each list member carries the running path metric together with
the precoder shift-register state, which threads through the leaves in
decoding order exactly as it does through the encoder.

All list-wide arrays are (paths, width); pruning re-indexes every level of
the working memory by the surviving parents, which keeps the recursion
free of stale per-path references.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .codec import CodeSpec, crc_check

__all__ = [
    "LLR_MAX",
    "DecoderConfig",
    "DecodePath",
    "DecodeResult",
    "f_combine",
    "g_combine",
    "combine_partial",
    "pm_update_leaf",
    "expand_and_prune",
    "scl_decode",
]

# LLR ingestion clamp; desk-scale channel LLRs sit far below this.
LLR_MAX = 32768.0


@dataclass(frozen=True)
class DecoderConfig:
    """List-decoder settings. The only supported metric is min-sum."""

    list_size: int = 1
    crc_aided: bool = False
    metric: str = "min-sum"

    def __post_init__(self):
        if self.list_size < 1:
            raise ValueError("list_size must be >= 1")
        if self.metric != "min-sum":
            raise ValueError(f"unsupported metric {self.metric!r}")


@dataclass
class DecodePath:
    """One finished list member."""

    pm: float
    cstate: np.ndarray
    v: np.ndarray
    u: np.ndarray
    beta: np.ndarray


@dataclass
class DecodeResult:
    """Decoder output: the chosen word plus the full final list."""

    data: np.ndarray
    v: np.ndarray
    u: np.ndarray
    pm: float
    paths: list[DecodePath]
    selected: int = 0


# --------------------------------------------------------------------------
# elementwise update rules


def f_combine(a, b):
    """Min-sum box-plus: sign(a)sign(b)min(|a|,|b|), with sign(0) = +1."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    sign = np.where((a < 0) != (b < 0), -1.0, 1.0)
    return sign * np.minimum(np.abs(a), np.abs(b))


def g_combine(a, b, beta):
    """Partial-sum-corrected sum: (1-2*beta)*a + b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return (1.0 - 2.0 * np.asarray(beta, dtype=np.float64)) * a + b


def combine_partial(beta_l, beta_r) -> np.ndarray:
    """Stack child partial sums: left half XORed, right half passed through."""
    beta_l = np.asarray(beta_l, dtype=np.uint8)
    beta_r = np.asarray(beta_r, dtype=np.uint8)
    if beta_l.shape != beta_r.shape:
        raise ValueError(f"length mismatch: {beta_l.shape} vs {beta_r.shape}")
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=-1)


def pm_update_leaf(pm, llr, u):
    """Add |llr| when the bit u contradicts the hard decision of llr."""
    llr = np.asarray(llr, dtype=np.float64)
    penalty = np.where((llr < 0) != np.asarray(u, dtype=bool), np.abs(llr), 0.0)
    return pm + penalty


def expand_and_prune(pm, parent, branch, list_size: int) -> np.ndarray:
    """Select the up-to-list_size best candidates of one expansion step.

    Candidates are given column-wise (path metric, parent path index,
    branch label). Returns the indices of the kept candidates ordered by
    (pm, parent, branch); the deterministic tie-break keeps the lower
    parent index and the lower branch label.
    """
    pm = np.asarray(pm, dtype=np.float64)
    if pm.size == 0:
        raise RuntimeError("expand_and_prune called with no candidates")
    order = np.lexsort((np.asarray(branch), np.asarray(parent), pm))
    return order[: min(list_size, pm.size)]


# --------------------------------------------------------------------------
# list state


class _ListState:
    """Working memory of an in-flight list decode (structure of arrays)."""

    __slots__ = ("lam", "bl", "bout", "pm", "cstate", "v", "u", "cursor")

    def __init__(self, llr: np.ndarray, spec: CodeSpec):
        n = spec.n
        self.lam: list = [None] * (n + 1)
        self.lam[0] = llr[None, :].copy()
        self.bl: list = [None] * n
        self.bout: list = [None] * (n + 1)
        self.pm = np.zeros(1, dtype=np.float64)
        self.cstate = np.zeros((1, spec.m), dtype=np.uint8)
        self.v = np.zeros((1, spec.N), dtype=np.uint8)
        self.u = np.zeros((1, spec.N), dtype=np.uint8)
        self.cursor = 0

    @property
    def size(self) -> int:
        return self.pm.size

    def select(self, parents: np.ndarray) -> None:
        """Re-index every per-path array by the surviving parents.

        The path metric is left alone: every expansion step assigns the
        candidate metrics right after selecting.
        """
        self.cstate = self.cstate[parents]
        self.v = self.v[parents]
        self.u = self.u[parents]
        for level in (self.lam, self.bl, self.bout):
            for i, arr in enumerate(level):
                if arr is not None:
                    level[i] = arr[parents]

    def push_state(self, bits: np.ndarray) -> None:
        """Shift one input bit per path into the register."""
        if self.cstate.shape[1]:
            self.cstate = np.concatenate([bits[:, None], self.cstate[:, :-1]], axis=1)


# --------------------------------------------------------------------------
# engine


def _ingest_llr(llr, N: int) -> np.ndarray:
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim != 1 or llr.size != N:
        raise ValueError(f"expected {N} LLR values, got shape {llr.shape}")
    return np.clip(llr, -LLR_MAX, LLR_MAX)


_EXPAND_CACHE: dict = {}


def _expand_templates(P: int):
    """Parent/branch index vectors for a two-way expansion of P paths."""
    cached = _EXPAND_CACHE.get(P)
    if cached is None:
        parent = np.concatenate([np.arange(P), np.arange(P)])
        branch = np.repeat(np.array([0, 1], dtype=np.uint8), P)
        cached = _EXPAND_CACHE[P] = (parent, branch)
    return cached


def _leaf(st: _ListState, n: int, is_info: bool, g: np.ndarray, list_size: int) -> None:
    lam = st.lam[n][:, 0]
    z0 = kernels.zero_input_bit(st.cstate, g)
    if is_info:
        P = st.size
        pen0 = kernels.leaf_penalty(lam, z0)
        pen1 = kernels.leaf_penalty(lam, z0 ^ 1)
        pmc = np.concatenate([st.pm + pen0, st.pm + pen1])
        parent, branch = _expand_templates(P)
        keep = expand_and_prune(pmc, parent, branch, list_size)
        par = parent[keep]
        vb = branch[keep]
        st.select(par)
        st.pm = pmc[keep]
        ub = z0[par] ^ vb
        st.v[:, st.cursor] = vb
        st.push_state(vb)
    else:
        st.pm = st.pm + kernels.leaf_penalty(lam, z0)
        ub = z0
        st.push_state(np.zeros(st.size, dtype=np.uint8))
    st.u[:, st.cursor] = ub
    st.bout[n] = ub[:, None].copy()
    st.cursor += 1


def _decode_engine(llr, spec: CodeSpec, config: DecoderConfig, special=None) -> DecodeResult:
    """Shared SCL traversal; `special` may consume whole subtrees.

    `special(state, depth) -> bool` is the node-level hook used by the
    simplified decoder; when it returns True the subtree rooted at the
    current cursor has been fully processed.
    """
    if config.crc_aided and spec.crc_poly is None:
        raise ValueError("crc_aided decoding requires a spec with crc_poly")
    llr = _ingest_llr(llr, spec.N)
    g = np.asarray(spec.gen_poly, dtype=np.uint8)
    info = spec.info_mask
    st = _ListState(llr, spec)

    N, n, L = spec.N, spec.n, config.list_size

    def walk(d: int) -> None:
        nv = N >> d
        if special is not None and nv >= 2 and special(st, d):
            return
        if nv == 1:
            _leaf(st, n, bool(info[st.cursor]), g, L)
            return
        st.lam[d + 1] = kernels.f_llr(st.lam[d])
        walk(d + 1)
        st.bl[d] = st.bout[d + 1]
        st.bout[d + 1] = None
        st.lam[d + 1] = kernels.g_llr(st.lam[d], st.bl[d])
        walk(d + 1)
        st.bout[d] = np.concatenate([st.bl[d] ^ st.bout[d + 1], st.bout[d + 1]], axis=1)
        st.bl[d] = None
        st.bout[d + 1] = None
        st.lam[d + 1] = None

    walk(0)

    order = np.lexsort((np.arange(st.size), st.pm))
    paths = [
        DecodePath(
            pm=float(st.pm[i]),
            cstate=st.cstate[i].copy(),
            v=st.v[i].copy(),
            u=st.u[i].copy(),
            beta=st.bout[0][i].copy(),
        )
        for i in order
    ]
    selected = 0
    if config.crc_aided:
        for i, p in enumerate(paths):
            if crc_check(p.v[info], spec.crc_poly):
                selected = i
                break
    chosen = paths[selected]
    data = chosen.v[info][: spec.payload_len].copy()
    return DecodeResult(
        data=data, v=chosen.v, u=chosen.u, pm=chosen.pm, paths=paths, selected=selected
    )


def scl_decode(llr, spec: CodeSpec, config: DecoderConfig | None = None) -> DecodeResult:
    """Successive-cancellation list decoding; list_size=1 is plain SC."""
    return _decode_engine(llr, spec, config if config is not None else DecoderConfig())
