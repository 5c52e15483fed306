"""BPSK / BI-AWGN channel and seeded Monte Carlo BLER estimation.

Reproducibility contract: every trial draws from its own counter-based
Philox stream keyed by (seed, snr index, trial index), and Gaussians come
from an explicit Box-Muller transform of that stream. Trials are therefore
order-independent, so batches may be farmed out to worker processes
without changing any result; the early-stop decision is taken only at
fixed batch boundaries to stay deterministic under parallel execution.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .codec import CodeSpec, pac_encode
from .decoding import DecoderConfig, scl_decode
from .nodes import NodePolicy, sscl_decode

__all__ = [
    "ChannelConfig",
    "SimResult",
    "PairedResult",
    "DecoderSetup",
    "trial_rng",
    "gaussian",
    "channel_llrs",
    "wilson_interval",
    "run_bler",
    "paired_compare",
]

_SNR_STRIDE = 1 << 40  # trial indices must stay below this per SNR point


@dataclass(frozen=True)
class ChannelConfig:
    """BI-AWGN channel at SNR = 10*log10(1/sigma^2), with the RNG seed."""

    snr_db: float
    seed: int = 0

    @property
    def sigma2(self) -> float:
        return 10.0 ** (-self.snr_db / 10.0)


def trial_rng(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Independent counter-based generator for one trial."""
    return np.random.Generator(np.random.Philox(key=[seed, stream * _SNR_STRIDE + trial]))


def gaussian(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard normals via Box-Muller on the uniform stream.

    z = sqrt(-2 ln(1-u1)) cos(2 pi u2); spelled out (rather than
    rng.normal) so the noise is a documented, platform-stable function of
    the Philox stream.
    """
    u1 = rng.random(size)
    u2 = rng.random(size)
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


def channel_llrs(codeword, cfg: ChannelConfig, rng: np.random.Generator) -> np.ndarray:
    """Transmit x = 1-2c over AWGN and return LLRs 2y/sigma^2 (positive = bit 0)."""
    c = np.asarray(codeword, dtype=np.uint8)
    sigma2 = cfg.sigma2
    if not sigma2 > 0:
        raise ValueError("noise variance must be positive")
    x = 1.0 - 2.0 * c.astype(np.float64)
    y = x + np.sqrt(sigma2) * gaussian(rng, c.size)
    return 2.0 * y / sigma2


def wilson_interval(errors: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    p = errors / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    spread = z * np.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if errors == 0 else max(center - spread, 0.0)
    hi = 1.0 if errors == trials else min(center + spread, 1.0)
    return float(lo), float(hi)


@dataclass(frozen=True)
class SimResult:
    snr_db: float
    trials: int
    block_errors: int
    bler: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class PairedResult:
    """Same-noise comparison of two decoders."""

    snr_db: float
    trials: int
    errors_a: int
    errors_b: int
    only_a: int  # trials where only decoder A erred
    only_b: int
    output_disagreements: int

    @property
    def bler_a(self) -> float:
        return self.errors_a / self.trials

    @property
    def bler_b(self) -> float:
        return self.errors_b / self.trials

    def diff_ci95(self) -> tuple[float, float]:
        """95% CI for BLER_a - BLER_b from the discordant trial counts."""
        t = self.trials
        diff = (self.only_a - self.only_b) / t
        var = (self.only_a + self.only_b) / (t * t) - diff * diff / t
        half = 1.959963984540054 * np.sqrt(max(var, 0.0))
        return diff - half, diff + half


@dataclass(frozen=True)
class DecoderSetup:
    """Picklable decoder choice for the simulator workers."""

    kind: str = "scl"  # sc | scl | sscl | reference
    list_size: int = 8
    z: int | None = 4
    policy: NodePolicy | None = None
    crc_aided: bool = False

    def __post_init__(self):
        if self.kind not in ("sc", "scl", "sscl", "reference"):
            raise ValueError(f"unknown decoder kind {self.kind!r}")

    def config(self) -> DecoderConfig:
        L = 1 if self.kind == "sc" else self.list_size
        return DecoderConfig(list_size=L, crc_aided=self.crc_aided)

    def decode(self, llr, spec: CodeSpec):
        if self.kind == "reference":
            return _reference_decode(llr, spec)
        if self.kind == "sscl":
            return sscl_decode(llr, spec, self.config(), z=self.z, policy=self.policy)
        return scl_decode(llr, spec, self.config())


def _reference_decode(llr, spec: CodeSpec):
    """Exhaustive minimum-penalty decoding packaged like the list decoders."""
    from .codec import conv_trans, polar_transform, rate_profile
    from .decoding import DecodePath, DecodeResult
    from .reference import ml_decode

    data, penalty = ml_decode(llr, spec)
    v = rate_profile(data, spec)
    u, state = conv_trans(v, spec.gen_poly)
    path = DecodePath(pm=penalty, cstate=state, v=v, u=u, beta=polar_transform(u))
    return DecodeResult(data=data, v=v, u=u, pm=penalty, paths=[path], selected=0)


def _run_trial(spec, decoder, cfg, stream, trial):
    rng = trial_rng(cfg.seed, trial, stream)
    data = (rng.random(spec.payload_len) < 0.5).astype(np.uint8)
    llr = channel_llrs(pac_encode(data, spec), cfg, rng)
    result = decoder.decode(llr, spec)
    return data, llr, result


def _bler_chunk(args) -> int:
    spec, decoder, cfg, stream, start, stop = args
    errors = 0
    for trial in range(start, stop):
        data, _, result = _run_trial(spec, decoder, cfg, stream, trial)
        errors += int(not np.array_equal(result.data, data))
    return errors


def _paired_chunk(args) -> tuple[int, int, int, int, int]:
    spec, dec_a, dec_b, cfg, start, stop = args
    err_a = err_b = only_a = only_b = disagree = 0
    for trial in range(start, stop):
        rng = trial_rng(cfg.seed, trial)
        data = (rng.random(spec.payload_len) < 0.5).astype(np.uint8)
        llr = channel_llrs(pac_encode(data, spec), cfg, rng)
        out_a = dec_a.decode(llr, spec)
        out_b = dec_b.decode(llr, spec)
        ea = not np.array_equal(out_a.data, data)
        eb = not np.array_equal(out_b.data, data)
        err_a += ea
        err_b += eb
        only_a += ea and not eb
        only_b += eb and not ea
        disagree += not np.array_equal(out_a.data, out_b.data)
    return err_a, err_b, only_a, only_b, disagree


def _run_chunks(worker, chunks, jobs: int):
    if jobs <= 1 or len(chunks) <= 1:
        return [worker(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, chunks))


def _batches(total: int, batch: int):
    start = 0
    while start < total:
        yield start, min(start + batch, total)
        start += batch


def run_bler(
    spec: CodeSpec,
    decoder: DecoderSetup,
    cfg: ChannelConfig,
    snr_dbs,
    max_trials: int = 100000,
    min_errors: int = 100,
    jobs: int = 1,
    batch: int = 500,
) -> list[SimResult]:
    """Monte Carlo BLER sweep over the given SNR points.

    Each SNR point stops at the first batch boundary where min_errors
    block errors have accumulated, or at max_trials. Identical results for
    any `jobs` value.
    """
    if max_trials < 1:
        raise ValueError("max_trials must be >= 1")
    results = []
    for stream, snr_db in enumerate(snr_dbs):
        point_cfg = replace(cfg, snr_db=float(snr_db))
        errors = 0
        trials = 0
        for start, stop in _batches(max_trials, batch):
            chunk_size = max(1, (stop - start + jobs - 1) // jobs)
            chunks = [
                (spec, decoder, point_cfg, stream, s, min(s + chunk_size, stop))
                for s in range(start, stop, chunk_size)
            ]
            errors += sum(_run_chunks(_bler_chunk, chunks, jobs))
            trials = stop
            if errors >= min_errors:
                break
        lo, hi = wilson_interval(errors, trials)
        results.append(
            SimResult(
                snr_db=float(snr_db),
                trials=trials,
                block_errors=errors,
                bler=errors / trials,
                ci_low=lo,
                ci_high=hi,
            )
        )
    return results


def paired_compare(
    spec: CodeSpec,
    decoder_a: DecoderSetup,
    decoder_b: DecoderSetup,
    cfg: ChannelConfig,
    trials: int,
    jobs: int = 1,
    min_errors: int | None = None,
    batch: int = 500,
) -> PairedResult:
    """Run both decoders on identical noise realizations.

    Stops early (at a batch boundary) once both decoders have accumulated
    min_errors block errors, when that is given.
    """
    err_a = err_b = only_a = only_b = disagree = 0
    done = 0
    for start, stop in _batches(trials, batch):
        chunk_size = max(1, (stop - start + jobs - 1) // jobs)
        chunks = [
            (spec, decoder_a, decoder_b, cfg, s, min(s + chunk_size, stop))
            for s in range(start, stop, chunk_size)
        ]
        for ea, eb, oa, ob, dis in _run_chunks(_paired_chunk, chunks, jobs):
            err_a += ea
            err_b += eb
            only_a += oa
            only_b += ob
            disagree += dis
        done = stop
        if min_errors is not None and err_a >= min_errors and err_b >= min_errors:
            break
    return PairedResult(
        snr_db=cfg.snr_db,
        trials=done,
        errors_a=err_a,
        errors_b=err_b,
        only_a=only_a,
        only_b=only_b,
        output_disagreements=disagree,
    )
