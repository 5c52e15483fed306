"""Backend parity: every compiled kernel must match its numpy twin."""

import numpy as np
import pytest

from paccodes import kernels
from paccodes import _kernels_py as kpy
from paccodes.codec import conv_inverse, conv_trans, polar_transform

from conftest import G_PAPER

kc = pytest.importorskip("paccodes._ckernels", reason="compiled kernels not built")

G = np.asarray(G_PAPER, dtype=np.uint8)


def _llr_block(rng, P, W):
    return np.ascontiguousarray(rng.normal(0, 3, (P, W)))


def test_backend_registry():
    assert "py" in kernels.available_backends()
    assert kernels.active_backend() in kernels.available_backends()
    before = kernels.active_backend()
    kernels.set_backend("py")
    assert kernels.active_backend() == "py"
    kernels.set_backend(before)
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_f_llr_parity(rng):
    for _ in range(30):
        lam = _llr_block(rng, int(rng.integers(1, 9)), int(rng.choice([2, 4, 8, 32])))
        lam[0, 0] = 0.0  # exercise the sign(0) = +1 convention
        assert np.array_equal(kc.f_llr(lam), kpy.f_llr(lam))


def test_g_llr_parity(rng):
    for _ in range(30):
        P, W = int(rng.integers(1, 9)), int(rng.choice([2, 4, 8, 32]))
        lam = _llr_block(rng, P, W)
        bits = rng.integers(0, 2, (P, W // 2)).astype(np.uint8)
        assert np.array_equal(kc.g_llr(lam, bits), kpy.g_llr(lam, bits))


def test_hard_and_penalty_parity(rng):
    for _ in range(30):
        P, W = int(rng.integers(1, 9)), int(rng.choice([1, 2, 8, 16]))
        lam = _llr_block(rng, P, W)
        beta = rng.integers(0, 2, (P, W)).astype(np.uint8)
        assert np.array_equal(kc.hard_rows(lam), kpy.hard_rows(lam))
        np.testing.assert_allclose(
            kc.penalty_rows(lam, beta), kpy.penalty_rows(lam, beta), atol=1e-9
        )
        u = rng.integers(0, 2, P).astype(np.uint8)
        col = np.ascontiguousarray(lam[:, 0])
        np.testing.assert_allclose(
            kc.leaf_penalty(col, u), kpy.leaf_penalty(col, u), atol=0
        )


def test_polar_rows_parity(rng):
    for _ in range(30):
        P, W = int(rng.integers(1, 9)), int(rng.choice([1, 2, 4, 16, 64]))
        bits = rng.integers(0, 2, (P, W)).astype(np.uint8)
        a, b = bits.copy(), bits.copy()
        kc.polar_rows(a)
        kpy.polar_rows(b)
        assert np.array_equal(a, b)
        assert np.array_equal(a[0], polar_transform(bits[0]))


def test_zero_input_parity(rng):
    for g in (G, np.array([1], np.uint8), np.array([1, 1], np.uint8)):
        m = g.size - 1
        for _ in range(20):
            P = int(rng.integers(1, 9))
            state = rng.integers(0, 2, (P, m)).astype(np.uint8)
            assert np.array_equal(kc.zero_input_bit(state, g), kpy.zero_input_bit(state, g))
            for length in (1, 2, 4, 16):
                a = kc.zero_input_rows(state, g, length)
                b = kpy.zero_input_rows(state, g, length)
                assert np.array_equal(a, b)
                # row 0 against the scalar reference
                want, _ = conv_trans(np.zeros(length, np.uint8), g, state[0])
                assert np.array_equal(a[0], want)


def test_conv_inverse_rows_parity(rng):
    for _ in range(30):
        P, W = int(rng.integers(1, 9)), int(rng.choice([2, 4, 8, 32]))
        y = rng.integers(0, 2, (P, W)).astype(np.uint8)
        a = kc.conv_inverse_rows(y, G)
        b = kpy.conv_inverse_rows(y, G)
        assert np.array_equal(a, b)
        assert np.array_equal(a[0], conv_inverse(y[0], G_PAPER))


def test_decode_agrees_across_backends(rng):
    # whole-decoder smoke parity (bit decisions; PMs can differ in the last ulp)
    from paccodes import DecoderConfig, scl_decode, sscl_decode
    from conftest import noisy_llr, random_spec

    spec = random_spec(rng, 64, 30)
    before = kernels.active_backend()
    try:
        for _ in range(10):
            _, llr = noisy_llr(rng, spec)
            kernels.set_backend("c")
            a = scl_decode(llr, spec, DecoderConfig(list_size=4))
            s_a = sscl_decode(llr, spec, DecoderConfig(list_size=4), z=4)
            kernels.set_backend("py")
            b = scl_decode(llr, spec, DecoderConfig(list_size=4))
            s_b = sscl_decode(llr, spec, DecoderConfig(list_size=4), z=4)
            assert np.array_equal(a.v, b.v)
            assert a.pm == pytest.approx(b.pm, abs=1e-9)
            assert np.array_equal(s_a.v, s_b.v)
            assert s_a.pm == pytest.approx(s_b.pm, abs=1e-9)
    finally:
        kernels.set_backend(before)
