import numpy as np
import pytest

from paccodes import (
    ChannelConfig,
    CodeSpec,
    DecoderSetup,
    NodePolicy,
    channel_llrs,
    load_profile,
    pac_encode,
    paired_compare,
    run_bler,
    wilson_interval,
)
from paccodes.channel import gaussian, trial_rng

from conftest import G_PAPER, random_spec


def test_sigma2():
    assert ChannelConfig(snr_db=0.0).sigma2 == pytest.approx(1.0)
    assert ChannelConfig(snr_db=3.0).sigma2 == pytest.approx(10 ** -0.3)


def test_gaussian_moments():
    z = gaussian(trial_rng(1, 0), 200000)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1.0) < 0.01


def test_trial_streams_are_independent_and_stable():
    a = gaussian(trial_rng(7, 3), 8)
    b = gaussian(trial_rng(7, 3), 8)
    c = gaussian(trial_rng(7, 4), 8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(gaussian(trial_rng(8, 3), 8), a)


def test_channel_llr_convention(rng):
    c = rng.integers(0, 2, 64).astype(np.uint8)
    cfg = ChannelConfig(snr_db=40.0)  # essentially noiseless
    llr = channel_llrs(c, cfg, trial_rng(0, 0))
    assert np.array_equal(llr < 0, c.astype(bool))


def test_channel_llr_mean(rng):
    cfg = ChannelConfig(snr_db=2.0)
    c = np.zeros(4096, np.uint8)
    llr = channel_llrs(c, cfg, trial_rng(0, 1))
    expect = 2.0 / cfg.sigma2
    se = (2.0 / cfg.sigma2) / np.sqrt(cfg.sigma2) / np.sqrt(c.size)  # rough
    assert abs(llr.mean() - expect) < 5 * se


def test_wilson_interval():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0.0 and hi < 0.05
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_run_bler_high_snr_zero_errors(rng):
    spec = random_spec(rng, 32, 16)
    res = run_bler(
        spec,
        DecoderSetup(kind="scl", list_size=2),
        ChannelConfig(snr_db=20.0, seed=1),
        [20.0],
        max_trials=50,
        min_errors=1,
    )[0]
    assert res.block_errors == 0 and res.bler == 0.0 and res.trials == 50


def test_run_bler_deterministic_and_job_invariant(rng):
    spec = random_spec(rng, 32, 16)
    dec = DecoderSetup(kind="scl", list_size=2)
    cfg = ChannelConfig(snr_db=1.0, seed=9)
    a = run_bler(spec, dec, cfg, [1.0, 2.0], max_trials=120, min_errors=1000)
    b = run_bler(spec, dec, cfg, [1.0, 2.0], max_trials=120, min_errors=1000)
    c = run_bler(spec, dec, cfg, [1.0, 2.0], max_trials=120, min_errors=1000, jobs=2)
    assert a == b == c


def test_run_bler_early_stop_at_batch_boundary(rng):
    spec = random_spec(rng, 32, 16)
    dec = DecoderSetup(kind="scl", list_size=1)
    res = run_bler(
        spec,
        dec,
        ChannelConfig(snr_db=-3.0, seed=4),
        [-3.0],
        max_trials=10000,
        min_errors=5,
        batch=50,
    )[0]
    assert res.block_errors >= 5
    assert res.trials % 50 == 0 and res.trials < 10000


def test_paired_compare_identical_decoders(rng):
    spec = random_spec(rng, 64, 32)
    dec = DecoderSetup(kind="scl", list_size=4)
    out = paired_compare(spec, dec, dec, ChannelConfig(snr_db=1.5, seed=2), trials=60)
    assert out.output_disagreements == 0
    assert out.errors_a == out.errors_b
    assert out.only_a == out.only_b == 0
    lo, hi = out.diff_ci95()
    assert lo == hi == 0.0


def test_paired_compare_scl_vs_disabled_sscl(rng):
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    a = DecoderSetup(kind="scl", list_size=4)
    b = DecoderSetup(kind="sscl", list_size=4, z=4, policy=NodePolicy.disabled())
    out = paired_compare(spec, a, b, ChannelConfig(snr_db=2.0, seed=5), trials=40)
    assert out.output_disagreements == 0


def test_reference_decoder_setup(rng):
    spec = random_spec(rng, 16, 6)
    dec = DecoderSetup(kind="reference")
    d = rng.integers(0, 2, 6).astype(np.uint8)
    llr = (1.0 - 2.0 * pac_encode(d, spec)) * 9.0
    out = dec.decode(llr, spec)
    assert np.array_equal(out.data, d)
    with pytest.raises(ValueError):
        DecoderSetup(kind="viterbi")
