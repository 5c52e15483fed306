import numpy as np
import pytest

from paccodes import (
    CodeSpec,
    NodeClass,
    NodePolicy,
    enumerate_special_nodes,
    latency_report,
    load_profile,
    scl_cycles,
    sscl_cycles,
)
from paccodes.latency import node_cycle_cost

from conftest import G_PAPER, random_spec


def test_scl_cycles_formula():
    assert scl_cycles(CodeSpec.create(4, (1, 2, 3), (1, 1))) == 9
    spec128 = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    assert scl_cycles(spec128) == 326
    spec256 = CodeSpec.create(256, load_profile("pac_256_128"), G_PAPER)
    assert scl_cycles(spec256) == 638


def test_node_cycle_costs():
    assert node_cycle_cost(NodeClass.RATE0, 4, 6) == 4
    assert node_cycle_cost(NodeClass.RATE0, 16, 6) == 6
    assert node_cycle_cost(NodeClass.REP, 4, 6) == 5
    assert node_cycle_cost(NodeClass.RATE1, 16, 6, kappa=1) == 6
    assert node_cycle_cost(NodeClass.SPC, 16, 6, kappa=1) == 6
    assert node_cycle_cost(NodeClass.SPC, 2, 6, kappa=3) == 4
    with pytest.raises(ValueError):
        node_cycle_cost(NodeClass.GENERIC, 4, 6)


def test_single_node_codes():
    # all-frozen length-4 code: the root is one rate-0 node, q = min(4, 6)
    spec = CodeSpec.create(4, (3,), (1, 0, 1, 1, 0, 1, 1))
    all_frozen = NodePolicy()  # [F,F,F,I] is a repetition root
    assert sscl_cycles(spec, all_frozen) == 5  # q + 1, no LLR cycles
    stats = enumerate_special_nodes(spec, all_frozen)
    assert stats.special == {(NodeClass.REP, 4): 1}

    spec_r1 = CodeSpec.create(4, (0, 1, 2, 3), G_PAPER)
    assert sscl_cycles(spec_r1, kappa=1) == max(2, 4)  # rate-1 root
    spec_spc = CodeSpec.create(16, tuple(range(1, 16)), G_PAPER)
    assert sscl_cycles(spec_spc, kappa=1) == max(2, 6)  # SPC root


def test_disabled_policy_matches_scl(rng):
    for _ in range(20):
        N = int(rng.choice([16, 32, 64, 128]))
        spec = random_spec(rng, N, int(rng.integers(1, N)))
        assert sscl_cycles(spec, NodePolicy.disabled()) == scl_cycles(spec)


def test_savings_monotone(rng):
    for _ in range(30):
        N = int(rng.choice([32, 64]))
        spec = random_spec(rng, N, int(rng.integers(1, N)))
        for kappa in (0, 1, 2):
            assert sscl_cycles(spec, kappa=kappa) <= scl_cycles(spec)


def test_leaf_coverage_random_profiles(rng):
    for _ in range(100):
        N = int(rng.choice([8, 16, 32, 64]))
        spec = random_spec(rng, N, int(rng.integers(1, N)))
        stats = enumerate_special_nodes(spec)
        assert stats.leaf_coverage() == N


def test_leaf_coverage_matches_bruteforce(rng):
    from paccodes import classify_node

    def brute(spec, policy):
        frozen = ~spec.info_mask
        found = {}

        def walk(start, length):
            cls = classify_node(frozen[start : start + length])
            if policy.allows(cls, length):
                found[(cls, length)] = found.get((cls, length), 0) + 1
                return
            if length > 1:
                walk(start, length // 2)
                walk(start + length // 2, length // 2)

        walk(0, spec.N)
        return found

    policy = NodePolicy()
    for _ in range(50):
        N = int(rng.choice([16, 32, 64]))
        spec = random_spec(rng, N, int(rng.integers(1, N)))
        assert enumerate_special_nodes(spec, policy).special == brute(spec, policy)


def test_extreme_profiles():
    # lone info bit at the end: the whole tree is one repetition node
    spec = CodeSpec.create(64, (63,), G_PAPER)
    stats = enumerate_special_nodes(spec)
    assert stats.special == {(NodeClass.REP, 64): 1}
    assert stats.leaf_coverage() == 64


def test_report_fields():
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    rep = latency_report(spec)
    assert rep.scl_cycles == 326
    assert rep.sscl_cycles < rep.scl_cycles
    assert rep.reduction_pct == pytest.approx(
        100.0 * (rep.scl_cycles - rep.sscl_cycles) / rep.scl_cycles
    )
    d = rep.as_dict()
    assert d["scl_cycles"] == 326
    assert set(d["node_stats"]) == {str(k) for k in rep.q_by_length}
    for length, q in rep.q_by_length.items():
        assert q == min(length, spec.m)


def test_max_len_policy_limits_census(rng):
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    stats = enumerate_special_nodes(spec, NodePolicy(max_len=4))
    assert all(length <= 4 for (_, length) in stats.special)
    assert stats.leaf_coverage() == 128
