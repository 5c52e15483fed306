"""Special-node classification and node-level list decoding.

Four constituent-code shapes are decoded directly at their subtree root
instead of leaf by leaf: all-frozen (rate-0), frozen-except-last
(repetition), all-information (rate-1), and frozen-first (single parity
check). Because of the convolutional precoder, each node also has to
track the register state: the zero-input register response eta shifts the
node's output codebook, and recovering the carrier bits v from a chosen
output word needs the inverse convolution.

The node-level path metric adds |llr| at every position where the chosen
output word defies the hard decision; under min-sum this equals the
leaf-by-leaf metric accumulation exactly (see reference.leaf_pm_replay).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from . import kernels
from .codec import CodeSpec, as_bits
from .decoding import DecoderConfig, DecodeResult, _decode_engine, expand_and_prune

__all__ = [
    "NodeClass",
    "NodePolicy",
    "NodeCandidate",
    "classify_node",
    "node_pm",
    "process_rate0",
    "process_rep",
    "rate1_candidates",
    "process_rate1",
    "spc_candidates",
    "process_spc",
    "sscl_decode",
]

# Chase enumeration guard: windows beyond this blow up as 2**window.
_MAX_WINDOW = 20


class NodeClass(Enum):
    RATE0 = "rate0"
    REP = "rep"
    RATE1 = "rate1"
    SPC = "spc"
    GENERIC = "generic"


def classify_node(frozen) -> NodeClass:
    """Classify a node by its leaf frozen pattern (True/1 = frozen).

    Precedence for the degenerate short patterns is fixed as
    rate-0 > repetition > rate-1 > SPC, so [frozen, info] is a repetition
    node and a lone info leaf is a (length-1) repetition node.
    """
    frozen = np.asarray(frozen, dtype=bool)
    if frozen.ndim != 1 or frozen.size < 1:
        raise ValueError("frozen pattern must be a nonempty 1-D vector")
    if frozen.all():
        return NodeClass.RATE0
    if frozen[:-1].all() and not frozen[-1]:
        return NodeClass.REP
    if not frozen.any():
        return NodeClass.RATE1
    if frozen[0] and not frozen[1:].any():
        return NodeClass.SPC
    return NodeClass.GENERIC


@dataclass(frozen=True)
class NodePolicy:
    """Which node classes may be consumed whole, and at what lengths."""

    enabled: frozenset = frozenset(
        (NodeClass.RATE0, NodeClass.REP, NodeClass.RATE1, NodeClass.SPC)
    )
    max_len: int | None = None
    min_len: int = 2

    def __post_init__(self):
        object.__setattr__(self, "enabled", frozenset(self.enabled))

    def allows(self, cls: NodeClass, length: int) -> bool:
        if cls is NodeClass.GENERIC or cls not in self.enabled:
            return False
        if length < self.min_len:
            return False
        return self.max_len is None or length <= self.max_len

    @classmethod
    def disabled(cls) -> "NodePolicy":
        """Policy under which the simplified decoder degenerates to SCL."""
        return cls(enabled=frozenset())


@dataclass
class NodeCandidate:
    """One node-level expansion of a path."""

    v: np.ndarray
    u: np.ndarray
    beta: np.ndarray
    out_state: np.ndarray
    pm_inc: float


def node_pm(pm: float, llr, beta) -> float:
    """Node-level metric update: pm plus |llr_j| over sign disagreements."""
    llr = np.asarray(llr, dtype=np.float64)
    beta = as_bits(beta)
    if llr.shape != beta.shape:
        raise ValueError(f"length mismatch: {llr.shape} vs {beta.shape}")
    disagree = (llr < 0) != beta.astype(bool)
    return float(pm) + float(np.abs(llr[disagree]).sum())


# --------------------------------------------------------------------------
# shared row-level primitives (used by both the per-path API and the
# batched decoder handlers)


def _zero_response_rows(state: np.ndarray, g: np.ndarray, length: int):
    """eta and its transform eta_c for each path, as (P, length) arrays."""
    eta = kernels.zero_input_rows(state, g, length)
    eta_c = kernels.polar_rows(eta.copy())
    return eta, eta_c


def _shift_in_zeros(state: np.ndarray, length: int) -> np.ndarray:
    """Register contents after feeding `length` zero inputs."""
    m = state.shape[1]
    q = min(length, m)
    if q == 0:
        return state
    P = state.shape[0]
    return np.concatenate([np.zeros((P, q), dtype=np.uint8), state[:, : m - q]], axis=1)


def _complete_rows(beta: np.ndarray, eta: np.ndarray, state: np.ndarray, g: np.ndarray):
    """Recover (v, u, out_state) for chosen node outputs beta.

    u is beta transformed back (the transform is involutory), v comes from
    the inverse convolution of u + eta, and the new register holds the last
    q = min(node length, m) carrier bits ahead of the surviving old bits.
    """
    nv = beta.shape[1]
    m = state.shape[1]
    u = kernels.polar_rows(beta.copy())
    v = kernels.conv_inverse_rows(u ^ eta, g)
    q = min(nv, m)
    if m == 0:
        out_state = state
    else:
        out_state = np.concatenate([v[:, nv - q :][:, ::-1], state[:, : m - q]], axis=1)
    return v, u, out_state


def _candidate_penalties(llr_row: np.ndarray, words: np.ndarray) -> np.ndarray:
    disagree = (llr_row[None, :] < 0) != words.astype(bool)
    return np.sum(np.abs(llr_row)[None, :] * disagree, axis=1)


# --------------------------------------------------------------------------
# candidate generation (Chase-style enumeration over the least reliable
# positions, penalty-ordered; ties break on fewer flips, then on the flip
# position set)


# subset tables keyed by (window size, parity): selection matrix for the
# penalty matmul plus each subset's size and window-slot tuple
_SUBSET_CACHE: dict = {}


def _subset_table(window: int, parity: int | None):
    key = (window, parity)
    cached = _SUBSET_CACHE.get(key)
    if cached is None:
        slots = []
        for size in range(window + 1):
            if parity is not None and size % 2 != parity:
                continue
            slots.extend(combinations(range(window), size))
        mask = np.zeros((len(slots), window), dtype=np.float64)
        for row, pos in zip(mask, slots):
            row[list(pos)] = 1.0
        sizes = mask.sum(axis=1).astype(np.int64)
        cached = _SUBSET_CACHE[key] = (mask, sizes, slots)
    return cached


def _ranked_flips(llr: np.ndarray, window: int, parity: int | None, count: int):
    """Flip sets against the hard decision, cheapest first.

    Ordered by (penalty, flip count, flip positions); flips are confined to
    the `window` least reliable positions.
    """
    if window > _MAX_WINDOW:
        raise ValueError(f"candidate window {window} too large to enumerate")
    mag = np.abs(llr)
    order = np.argsort(mag, kind="stable")[:window]
    mask, sizes, slots = _subset_table(window, parity)
    pens = mask @ mag[order]
    entries = [
        (float(pens[i]), int(sizes[i]), tuple(sorted(int(order[s]) for s in slots[i])))
        for i in range(len(slots))
    ]
    entries.sort()
    return entries[:count]


def rate1_candidates(llr, count: int) -> np.ndarray:
    """The `count` most likely words of an unconstrained node, best first.

    Candidate 0 is the elementwise hard decision; the rest flip subsets of
    the min(count, length) least reliable positions in non-decreasing
    penalty order. `count` is clipped to 2**length.
    """
    llr = np.asarray(llr, dtype=np.float64)
    count = max(1, min(count, 1 << llr.size))
    hard = (llr < 0).astype(np.uint8)
    out = np.tile(hard, (count, 1))
    flips = _ranked_flips(llr, min(count, llr.size), None, count)
    for row, (_, _, pos) in zip(out, flips):
        row[list(pos)] ^= 1
    return out


def spc_candidates(llr, count: int) -> np.ndarray:
    """The `count` most likely even-parity words, best first.

    Candidate 0 is the Wagner decision (hard decision, least reliable bit
    flipped if the parity is odd); later candidates keep the parity by
    flipping even-many (or odd-many) of the least reliable positions.
    `count` is clipped to 2**(length-1).
    """
    llr = np.asarray(llr, dtype=np.float64)
    count = max(1, min(count, 1 << max(llr.size - 1, 0)))
    hard = (llr < 0).astype(np.uint8)
    flip_parity = int(hard.sum()) & 1
    out = np.tile(hard, (count, 1))
    flips = _ranked_flips(llr, min(count, llr.size), flip_parity, count)
    for row, (_, _, pos) in zip(out, flips):
        row[list(pos)] ^= 1
    return out


# --------------------------------------------------------------------------
# per-path node processing


def _one_row(llr, state, gen_poly):
    llr = np.asarray(llr, dtype=np.float64)[None, :]
    state = as_bits(state)[None, :]
    g = np.asarray(gen_poly, dtype=np.uint8)
    return llr, state, g


def process_rate0(llr, state, gen_poly) -> NodeCandidate:
    """Single candidate of an all-frozen node: v = 0, output eta transformed."""
    llr2, state2, g = _one_row(llr, state, gen_poly)
    nv = llr2.shape[1]
    eta, eta_c = _zero_response_rows(state2, g, nv)
    pm_inc = float(kernels.penalty_rows(llr2, eta_c)[0])
    out_state = _shift_in_zeros(state2, nv)[0]
    return NodeCandidate(
        v=np.zeros(nv, dtype=np.uint8),
        u=eta[0],
        beta=eta_c[0],
        out_state=out_state,
        pm_inc=pm_inc,
    )


def process_rep(llr, state, gen_poly) -> list[NodeCandidate]:
    """Both candidates of a repetition node.

    The all-zero candidate is the rate-0 result; the second one is derived
    from it without another register pass: flip the last bit of u and v,
    complement beta, and flip the newest register bit.
    """
    base = process_rate0(llr, state, gen_poly)
    llr = np.asarray(llr, dtype=np.float64)
    nv = llr.size
    v1 = base.v.copy()
    v1[-1] = 1
    u1 = base.u.copy()
    u1[-1] ^= 1
    beta1 = base.beta ^ 1
    state1 = base.out_state.copy()
    if state1.size:
        state1[0] ^= 1
    pm1 = node_pm(0.0, llr, beta1)
    return [base, NodeCandidate(v=v1, u=u1, beta=beta1, out_state=state1, pm_inc=pm1)]


def _process_chase(llr, state, gen_poly, count, cls: NodeClass) -> list[NodeCandidate]:
    llr2, state2, g = _one_row(llr, state, gen_poly)
    nv = llr2.shape[1]
    eta, eta_c = _zero_response_rows(state2, g, nv)
    if cls is NodeClass.RATE1:
        betas = rate1_candidates(llr2[0], count)
    else:
        shifted = llr2[0] * (1.0 - 2.0 * eta_c[0])
        betas = spc_candidates(shifted, count) ^ eta_c
    pens = _candidate_penalties(llr2[0], betas)
    v, u, out_state = _complete_rows(
        np.ascontiguousarray(betas),
        np.repeat(eta, betas.shape[0], axis=0),
        np.repeat(state2, betas.shape[0], axis=0),
        g,
    )
    return [
        NodeCandidate(v=v[i], u=u[i], beta=betas[i], out_state=out_state[i], pm_inc=float(pens[i]))
        for i in range(betas.shape[0])
    ]


def process_rate1(llr, state, gen_poly, count: int) -> list[NodeCandidate]:
    """`count` candidates of an all-information node, best first."""
    return _process_chase(llr, state, gen_poly, count, NodeClass.RATE1)


def process_spc(llr, state, gen_poly, count: int) -> list[NodeCandidate]:
    """`count` candidates of a single-parity-check node, best first.

    The register response shifts the node codebook: the LLRs are sign
    corrected by eta_c, decoded as a plain SPC code, and the chosen words
    are shifted back by eta_c.
    """
    return _process_chase(llr, state, gen_poly, count, NodeClass.SPC)


# --------------------------------------------------------------------------
# batched node handlers for the list engine


def _node_z(cls: NodeClass, nv: int, z: int | None) -> int:
    cap = 1 << nv if cls is NodeClass.RATE1 else 1 << (nv - 1)
    return cap if z is None else min(z, cap)


def _handle_rate0(st, d: int, nv: int, g: np.ndarray) -> None:
    eta, eta_c = _zero_response_rows(st.cstate, g, nv)
    st.pm = st.pm + kernels.penalty_rows(st.lam[d], eta_c)
    st.u[:, st.cursor : st.cursor + nv] = eta
    st.cstate = _shift_in_zeros(st.cstate, nv)
    st.bout[d] = eta_c
    st.cursor += nv


def _handle_rep(st, d: int, nv: int, g: np.ndarray, list_size: int) -> None:
    P = st.size
    eta, eta_c = _zero_response_rows(st.cstate, g, nv)
    pen0 = kernels.penalty_rows(st.lam[d], eta_c)
    pen1 = kernels.penalty_rows(st.lam[d], eta_c ^ 1)
    pmc = np.concatenate([st.pm + pen0, st.pm + pen1])
    parent = np.concatenate([np.arange(P), np.arange(P)])
    branch = np.repeat(np.array([0, 1], dtype=np.uint8), P)
    keep = expand_and_prune(pmc, parent, branch, list_size)
    par = parent[keep]
    br = branch[keep]
    st.select(par)
    st.pm = pmc[keep]
    flip = br == 1
    u = eta[par]
    u[flip, -1] ^= 1
    beta = eta_c[par]
    beta[flip] ^= 1
    st.v[:, st.cursor + nv - 1] = br
    st.u[:, st.cursor : st.cursor + nv] = u
    st.cstate = _shift_in_zeros(st.cstate, nv)
    if st.cstate.shape[1]:
        st.cstate[flip, 0] ^= 1
    st.bout[d] = beta
    st.cursor += nv


def _handle_chase(st, d: int, nv: int, g: np.ndarray, list_size: int, z_node: int, cls) -> None:
    P = st.size
    lam = st.lam[d]
    eta, eta_c = _zero_response_rows(st.cstate, g, nv)
    betas = np.empty((P, z_node, nv), dtype=np.uint8)
    pens = np.empty((P, z_node), dtype=np.float64)
    for p in range(P):
        if cls is NodeClass.RATE1:
            betas[p] = rate1_candidates(lam[p], z_node)
        else:
            shifted = lam[p] * (1.0 - 2.0 * eta_c[p])
            betas[p] = spc_candidates(shifted, z_node) ^ eta_c[p]
        pens[p] = _candidate_penalties(lam[p], betas[p])
    pmc = (st.pm[:, None] + pens).ravel()
    parent = np.repeat(np.arange(P), z_node)
    branch = np.tile(np.arange(z_node), P)
    keep = expand_and_prune(pmc, parent, branch, list_size)
    par = parent[keep]
    beta = np.ascontiguousarray(betas.reshape(P * z_node, nv)[keep])
    st.select(par)
    st.pm = pmc[keep]
    v, u, out_state = _complete_rows(beta, eta[par], st.cstate, g)
    st.v[:, st.cursor : st.cursor + nv] = v
    st.u[:, st.cursor : st.cursor + nv] = u
    st.cstate = out_state
    st.bout[d] = beta
    st.cursor += nv


def sscl_decode(
    llr,
    spec: CodeSpec,
    config: DecoderConfig | None = None,
    z: int | None = 4,
    policy: NodePolicy | None = None,
) -> DecodeResult:
    """Simplified SCL decoding: special subtrees are consumed at their root.

    `z` bounds the candidates per path at rate-1/SPC nodes; z=None expands
    every word of the node codebook (exhaustive mode, only sensible with a
    small policy.max_len). With every class disabled this is bit-identical
    to scl_decode.
    """
    config = config if config is not None else DecoderConfig()
    policy = policy if policy is not None else NodePolicy()
    if z is not None and z < 1:
        raise ValueError("z must be >= 1 (or None for exhaustive)")
    g = np.asarray(spec.gen_poly, dtype=np.uint8)
    info = spec.info_mask

    def special(st, d: int) -> bool:
        nv = spec.N >> d
        cls = classify_node(~info[st.cursor : st.cursor + nv])
        if not policy.allows(cls, nv):
            return False
        if cls is NodeClass.RATE0:
            _handle_rate0(st, d, nv, g)
        elif cls is NodeClass.REP:
            _handle_rep(st, d, nv, g, config.list_size)
        else:
            _handle_chase(st, d, nv, g, config.list_size, _node_z(cls, nv, z), cls)
        return True

    return _decode_engine(llr, spec, config, special=special)
