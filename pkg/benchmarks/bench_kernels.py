#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the individual inner-loop kernels and whole decodes (SCL and SSCL on
the bundled PAC(128,72) code) on both backends, printing a small table.

    python3 benchmarks/bench_kernels.py [--trials 200] [--list-size 8]
"""

import argparse
import time

import numpy as np

from paccodes import (
    ChannelConfig,
    CodeSpec,
    DecoderConfig,
    kernels,
    load_profile,
    pac_encode,
    scl_decode,
    sscl_decode,
)
from paccodes.channel import channel_llrs, trial_rng

G = (1, 0, 1, 1, 0, 1, 1)


def _time(fn, repeat):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def bench_kernels(backend, rng):
    kernels.set_backend(backend)
    lam = np.ascontiguousarray(rng.normal(0, 3, (8, 128)))
    bits = rng.integers(0, 2, (8, 64)).astype(np.uint8)
    beta = rng.integers(0, 2, (8, 128)).astype(np.uint8)
    state = rng.integers(0, 2, (8, 6)).astype(np.uint8)
    g = np.asarray(G, dtype=np.uint8)
    word = rng.integers(0, 2, (8, 32)).astype(np.uint8)
    rows = {
        "f_llr (8x128)": lambda: kernels.f_llr(lam),
        "g_llr (8x128)": lambda: kernels.g_llr(lam, bits),
        "penalty_rows (8x128)": lambda: kernels.penalty_rows(lam, beta),
        "polar_rows (8x128)": lambda: kernels.polar_rows(beta.copy()),
        "zero_input_rows (8x16)": lambda: kernels.zero_input_rows(state, g, 16),
        "conv_inverse_rows (8x32)": lambda: kernels.conv_inverse_rows(word, g),
    }
    return {name: _time(fn, 2000) for name, fn in rows.items()}


def bench_decodes(backend, trials, list_size):
    kernels.set_backend(backend)
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G)
    cfg = ChannelConfig(snr_db=2.5, seed=1)
    blocks = []
    for t in range(trials):
        rng = trial_rng(cfg.seed, t)
        d = (rng.random(spec.K) < 0.5).astype(np.uint8)
        blocks.append(channel_llrs(pac_encode(d, spec), cfg, rng))
    dc = DecoderConfig(list_size=list_size)

    t0 = time.perf_counter()
    for llr in blocks:
        scl_decode(llr, spec, dc)
    scl_ms = 1000 * (time.perf_counter() - t0) / trials

    t0 = time.perf_counter()
    for llr in blocks:
        sscl_decode(llr, spec, dc, z=4)
    sscl_ms = 1000 * (time.perf_counter() - t0) / trials
    return scl_ms, sscl_ms


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--list-size", type=int, default=8)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "c" not in backends:
        print("compiled kernels not built; benchmarking the numpy backend only")

    rng = np.random.default_rng(0)
    micro = {b: bench_kernels(b, rng) for b in backends}
    print(f"{'kernel':<26}" + "".join(f"{b + ' (us)':>12}" for b in backends), end="")
    if len(backends) == 2:
        print(f"{'speedup':>10}")
    else:
        print()
    for name in next(iter(micro.values())):
        row = f"{name:<26}"
        for b in backends:
            row += f"{1e6 * micro[b][name]:>12.2f}"
        if len(backends) == 2:
            row += f"{micro['py'][name] / micro['c'][name]:>9.1f}x"
        print(row)

    print()
    print(f"whole decode, PAC(128,72), L={args.list_size}, {args.trials} blocks:")
    for b in backends:
        scl_ms, sscl_ms = bench_decodes(b, args.trials, args.list_size)
        print(f"  {b:>3}: scl {scl_ms:7.2f} ms/block   sscl {sscl_ms:7.2f} ms/block")


if __name__ == "__main__":
    main()
