import numpy as np
import pytest

from paccodes import ChannelConfig, CodeSpec, channel_llrs, pac_encode

G_PAPER = (1, 0, 1, 1, 0, 1, 1)


def random_spec(rng, N, K, gen_poly=G_PAPER, crc_poly=None) -> CodeSpec:
    info = np.sort(rng.choice(N, size=K, replace=False))
    return CodeSpec.create(N, tuple(int(i) for i in info), gen_poly, crc_poly)


def noisy_llr(rng, spec, snr_db=2.0):
    """One random transmission; returns (data, llr)."""
    d = rng.integers(0, 2, spec.payload_len).astype(np.uint8)
    llr = channel_llrs(pac_encode(d, spec), ChannelConfig(snr_db=snr_db), rng)
    return d, llr


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0DEC)
