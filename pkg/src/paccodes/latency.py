"""Cycle-count model for SCL versus node-simplified SCL decoding.

Counting rules: computing the LLRs of a visited non-root tree node costs
one cycle, the metric update/sort/prune at an information leaf costs one
cycle, partial encoding is free. A full traversal therefore costs
2N-2 + K cycles, with or without the precoder, since the register update
overlaps the leaf metric work.

When special nodes terminate the traversal early, each consumed node pays
its own processing cost instead of its subtree: q = min(node length, m)
register cycles for rate-0, q+1 for repetition (one extra sort cycle), and
max(kappa+1, q) for rate-1/SPC, where candidate generation plus sorting
takes kappa+1 cycles and the register response is computed in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codec import CodeSpec
from .nodes import NodeClass, NodePolicy, classify_node

__all__ = [
    "NodeStats",
    "LatencyReport",
    "enumerate_special_nodes",
    "scl_cycles",
    "node_cycle_cost",
    "sscl_cycles",
    "latency_report",
]


@dataclass
class NodeStats:
    """Pruned-tree census: special nodes by (class, length), plus leftovers."""

    special: dict = field(default_factory=dict)
    generic_info_leaves: int = 0
    generic_frozen_leaves: int = 0

    def add(self, cls: NodeClass, length: int) -> None:
        key = (cls, length)
        self.special[key] = self.special.get(key, 0) + 1

    def leaf_coverage(self) -> int:
        covered = sum(length * count for (_, length), count in self.special.items())
        return covered + self.generic_info_leaves + self.generic_frozen_leaves

    def by_length(self) -> dict:
        """Rows of the usual census table: length -> {class name: count}."""
        lengths = sorted({length for (_, length) in self.special})
        table = {}
        for length in lengths:
            table[length] = {
                cls.value: self.special.get((cls, length), 0)
                for cls in (NodeClass.RATE0, NodeClass.REP, NodeClass.RATE1, NodeClass.SPC)
            }
        return table


def _walk_pruned(spec: CodeSpec, policy: NodePolicy, visit_special, visit_leaf, visit_internal):
    frozen = ~spec.info_mask

    def walk(start: int, length: int, is_root: bool) -> None:
        cls = classify_node(frozen[start : start + length])
        if policy.allows(cls, length):
            visit_special(cls, length, is_root)
            return
        if length == 1:
            visit_leaf(bool(frozen[start]), is_root)
            return
        visit_internal(is_root)
        walk(start, length // 2, False)
        walk(start + length // 2, length // 2, False)

    walk(0, spec.N, True)


def enumerate_special_nodes(spec: CodeSpec, policy: NodePolicy | None = None) -> NodeStats:
    """Greedy top-down census of the pruned decoding tree.

    Recursion stops at the first node the policy lets the simplified
    decoder consume, so every leaf is covered exactly once.
    """
    policy = policy if policy is not None else NodePolicy()
    stats = NodeStats()

    def special(cls, length, _root):
        stats.add(cls, length)

    def leaf(is_frozen, _root):
        if is_frozen:
            stats.generic_frozen_leaves += 1
        else:
            stats.generic_info_leaves += 1

    _walk_pruned(spec, policy, special, leaf, lambda _root: None)
    return stats


def scl_cycles(spec: CodeSpec) -> int:
    """Baseline traversal cost: 2N - 2 LLR cycles plus K leaf cycles."""
    return 2 * spec.N - 2 + spec.K


def node_cycle_cost(cls: NodeClass, length: int, m: int, kappa: int = 1) -> int:
    """Processing cost of one consumed special node."""
    q = min(length, m)
    if cls is NodeClass.RATE0:
        return q
    if cls is NodeClass.REP:
        return q + 1
    if cls in (NodeClass.RATE1, NodeClass.SPC):
        return max(kappa + 1, q)
    raise ValueError(f"generic nodes have no node-level cost: {cls}")


def sscl_cycles(spec: CodeSpec, policy: NodePolicy | None = None, kappa: int = 1) -> int:
    """Cycle count of the node-simplified traversal.

    Every non-root node of the pruned tree costs one LLR cycle; consumed
    special nodes add their processing cost; surviving information leaves
    add their metric cycle. With an empty policy this equals scl_cycles.
    """
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    policy = policy if policy is not None else NodePolicy()
    total = 0

    def special(cls, length, is_root):
        nonlocal total
        total += (0 if is_root else 1) + node_cycle_cost(cls, length, spec.m, kappa)

    def leaf(is_frozen, is_root):
        nonlocal total
        total += (0 if is_root else 1) + (0 if is_frozen else 1)

    def internal(is_root):
        nonlocal total
        total += 0 if is_root else 1

    _walk_pruned(spec, policy, special, leaf, internal)
    return total


@dataclass
class LatencyReport:
    """Cycle totals for both decoders plus the pruned-tree census."""

    scl_cycles: int
    sscl_cycles: int
    reduction_pct: float
    node_stats: NodeStats
    kappa: int
    q_by_length: dict

    def as_dict(self) -> dict:
        return {
            "scl_cycles": self.scl_cycles,
            "sscl_cycles": self.sscl_cycles,
            "reduction_pct": round(self.reduction_pct, 4),
            "kappa": self.kappa,
            "q_by_length": {str(k): v for k, v in sorted(self.q_by_length.items())},
            "node_stats": {
                str(length): row for length, row in self.node_stats.by_length().items()
            },
            "generic_info_leaves": self.node_stats.generic_info_leaves,
            "generic_frozen_leaves": self.node_stats.generic_frozen_leaves,
        }


def latency_report(
    spec: CodeSpec, policy: NodePolicy | None = None, kappa: int = 1
) -> LatencyReport:
    """Full comparison of the baseline and simplified traversal costs."""
    policy = policy if policy is not None else NodePolicy()
    stats = enumerate_special_nodes(spec, policy)
    base = scl_cycles(spec)
    fast = sscl_cycles(spec, policy, kappa)
    lengths = sorted({length for (_, length) in stats.special})
    return LatencyReport(
        scl_cycles=base,
        sscl_cycles=fast,
        reduction_pct=100.0 * (base - fast) / base,
        node_stats=stats,
        kappa=kappa,
        q_by_length={length: min(length, spec.m) for length in lengths},
    )
