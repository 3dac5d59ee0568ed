import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ejafa import golden
from ejafa.blake2s import hmac_blake2s
from ejafa.errors import InvalidLength
from ejafa.hkdf import MAX_OUTPUT, hkdf, hkdf_expand, hkdf_extract

import oracles


def test_extract_is_hmac(rng):
    salt, ikm = rng.randbytes(16), rng.randbytes(32)
    assert hkdf_extract(salt, ikm) == hmac_blake2s(salt, ikm)


def test_empty_salt_means_zero_salt(rng):
    ikm = rng.randbytes(32)
    assert hkdf_extract(b"", ikm) == hkdf_extract(bytes(32), ikm)


def test_extract_golden_prk():
    assert hkdf_extract(b"", golden.X25519_SHARED) == golden.HKDF_PRK


def test_expand_single_block_is_t1():
    prk = golden.HKDF_PRK
    info = b"info"
    assert hkdf_expand(prk, info, 32) == hmac_blake2s(prk, info + b"\x01")


def test_expand_two_block_golden_vector():
    out = hkdf_expand(golden.HKDF_PRK, golden.HKDF_EXPAND_INFO, 33)
    assert out == golden.HKDF_EXPAND_33


def test_expand_chains_previous_block():
    prk, info = golden.HKDF_PRK, b"chain"
    t1 = hmac_blake2s(prk, info + b"\x01")
    t2 = hmac_blake2s(prk, t1 + info + b"\x02")
    assert hkdf_expand(prk, info, 64) == t1 + t2


def test_counter_starts_at_one():
    # an implementation starting its counter at zero would produce this instead
    prk, info = golden.HKDF_PRK, golden.HKDF_EXPAND_INFO
    wrong_t1 = hmac_blake2s(prk, info + b"\x00")
    assert hkdf_expand(prk, info, 32) != wrong_t1
    assert hkdf_expand(prk, info, 32) == hmac_blake2s(prk, info + b"\x01")


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 255), m=st.integers(1, 255))
def test_prefix_property(n, m):
    if n > m:
        n, m = m, n
    prk, info = golden.HKDF_PRK, b"prefix"
    assert hkdf_expand(prk, info, m)[:n] == hkdf_expand(prk, info, n)


def test_pipeline_composition(rng):
    salt, ikm, info = rng.randbytes(13), rng.randbytes(40), rng.randbytes(9)
    assert hkdf(salt, ikm, info, 48) == \
        hkdf_expand(hkdf_extract(salt, ikm), info, 48)
    assert hkdf(salt, ikm, info, 48) == oracles.hkdf_oracle(salt, ikm, info, 48)


def test_empty_info_allowed():
    assert len(hkdf_expand(golden.HKDF_PRK, b"", 32)) == 32


def test_length_limits():
    assert len(hkdf_expand(golden.HKDF_PRK, b"x", MAX_OUTPUT)) == MAX_OUTPUT
    with pytest.raises(InvalidLength):
        hkdf_expand(golden.HKDF_PRK, b"x", 0)
    with pytest.raises(InvalidLength):
        hkdf_expand(golden.HKDF_PRK, b"x", MAX_OUTPUT + 1)
    with pytest.raises(InvalidLength):
        hkdf_expand(bytes(31), b"x", 32)
