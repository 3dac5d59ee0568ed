import pytest

from ejafa import golden, session
from ejafa.errors import (
    AuthenticationFailed,
    LowOrderPeerKey,
    MalformedMessage,
    MessageTooLong,
)
from ejafa.session import (
    OVERHEAD,
    EncryptedMessage,
    decrypt,
    derive_session_key,
    encrypt,
    generate_mac,
    mac_key,
    perform_key_exchange,
    verify_mac,
)
from ejafa.x25519 import clamp, generate_keypair

import oracles

# a known low-order point other than zero: u = 1 has order 4
LOW_ORDER_U1 = b"\x01" + bytes(31)


def test_key_exchange_paper_vector():
    alice = clamp(golden.X25519_ALICE_PRIV)
    bob = clamp(golden.X25519_BOB_PRIV)
    assert perform_key_exchange(alice, golden.X25519_BOB_PUB) == golden.X25519_SHARED
    assert perform_key_exchange(bob, golden.X25519_ALICE_PUB) == golden.X25519_SHARED


def test_key_exchange_rejects_low_order_points(rng):
    priv, _ = generate_keypair(rng.randbytes(32))
    with pytest.raises(LowOrderPeerKey):
        perform_key_exchange(priv, bytes(32))
    with pytest.raises(LowOrderPeerKey):
        perform_key_exchange(priv, LOW_ORDER_U1)


def test_derive_symmetric_in_key_order(rng):
    k = rng.randbytes(32)
    pub_a, pub_b = rng.randbytes(32), rng.randbytes(32)
    assert derive_session_key(k, pub_a, pub_b) == derive_session_key(k, pub_b, pub_a)


def test_derive_output_is_32_bytes_and_not_raw_secret(rng):
    k = rng.randbytes(32)
    key = derive_session_key(k, rng.randbytes(32), rng.randbytes(32))
    assert len(key) == 32
    assert key != k


def test_derive_golden_value():
    key = derive_session_key(golden.X25519_SHARED,
                             golden.X25519_ALICE_PUB, golden.X25519_BOB_PUB)
    assert key == golden.SESSION_KEY


def test_round_trip_sizes(rng):
    key = rng.randbytes(32)
    for size in (0, 1, 15, 16, 17, 1024, 1 << 20):
        plaintext = rng.randbytes(size)
        msg = encrypt(key, plaintext)
        assert decrypt(key, msg) == plaintext
        assert len(msg.serialize()) == size + OVERHEAD


def test_serialize_parse_inverse(rng):
    key = rng.randbytes(32)
    msg = encrypt(key, rng.randbytes(77))
    parsed = EncryptedMessage.parse(msg.serialize())
    assert parsed == msg
    assert decrypt(key, msg.serialize()) == decrypt(key, parsed)


def test_golden_interop_vector():
    msg = encrypt(golden.SESSION_KEY, golden.SESSION_PLAINTEXT,
                  nonce=golden.SESSION_NONCE)
    assert msg.serialize() == golden.SESSION_ENCRYPTED
    assert decrypt(golden.SESSION_KEY, golden.SESSION_ENCRYPTED) == \
        golden.SESSION_PLAINTEXT


def test_encrypt_deterministic_with_fixed_nonce(rng):
    key, nonce = rng.randbytes(32), rng.randbytes(12)
    pt = rng.randbytes(100)
    assert encrypt(key, pt, nonce).serialize() == encrypt(key, pt, nonce).serialize()


def test_random_nonces_unique(rng):
    key = rng.randbytes(32)
    trials = 100_000
    nonces = {encrypt(key, b"").nonce for _ in range(trials)}
    assert len(nonces) == trials


def test_mac_key_comes_from_block_zero_payload_from_one(rng):
    from ejafa.chacha20 import chacha20_block
    key, nonce = rng.randbytes(32), rng.randbytes(12)
    assert mac_key(key, nonce) == chacha20_block(key, 0, nonce)[:32]
    msg = encrypt(key, bytes(64), nonce=nonce)
    assert msg.ciphertext == chacha20_block(key, 1, nonce)


def test_generate_mac_empty_ciphertext(rng):
    otk, nonce = rng.randbytes(32), rng.randbytes(12)
    assert generate_mac(otk, nonce, b"") == oracles.poly1305_oracle(otk, nonce)


def test_generate_mac_deterministic(rng):
    otk, nonce, ct = rng.randbytes(32), rng.randbytes(12), rng.randbytes(40)
    assert generate_mac(otk, nonce, ct) == generate_mac(otk, nonce, ct)


def test_mac_is_not_aead_construction():
    # same inputs, RFC 8439 AEAD padding/length framing: different tag
    msg = EncryptedMessage.parse(golden.SESSION_ENCRYPTED)
    otk = mac_key(golden.SESSION_KEY, msg.nonce)

    def pad16(x):
        return b"" if len(x) % 16 == 0 else bytes(16 - len(x) % 16)

    aead_input = (msg.ciphertext + pad16(msg.ciphertext)
                  + (0).to_bytes(8, "little")
                  + len(msg.ciphertext).to_bytes(8, "little"))
    aead_tag = oracles.poly1305_oracle(otk, aead_input)
    assert aead_tag == golden.SESSION_AEAD_STYLE_TAG
    assert aead_tag != msg.tag
    assert generate_mac(otk, msg.nonce, msg.ciphertext) == msg.tag


def test_verify_mac_accepts_and_rejects(rng):
    otk, nonce = rng.randbytes(32), rng.randbytes(12)
    ct = bytearray(rng.randbytes(60))
    tag = generate_mac(otk, nonce, bytes(ct))
    assert verify_mac(otk, nonce, bytes(ct), tag)
    for _ in range(50):
        pos, bit = rng.randrange(len(ct)), 1 << rng.randrange(8)
        ct[pos] ^= bit
        assert not verify_mac(otk, nonce, bytes(ct), tag)
        ct[pos] ^= bit
    flipped = bytearray(tag)
    flipped[0] ^= 1
    assert not verify_mac(otk, nonce, bytes(ct), bytes(flipped))


def test_decrypt_verifies_before_any_payload_keystream(rng, monkeypatch):
    key = rng.randbytes(32)
    good = encrypt(key, rng.randbytes(100))
    bad = EncryptedMessage(good.nonce, good.ciphertext, bytes(16))
    calls = []
    real = session.chacha20_xor

    def spy(*args):
        calls.append(args)
        return real(*args)

    monkeypatch.setattr(session, "chacha20_xor", spy)
    with pytest.raises(AuthenticationFailed):
        decrypt(key, bad)
    assert calls == []
    decrypt(key, good)
    assert len(calls) == 1


def test_tamper_any_bit_rejected_sparse(rng):
    # full 1024-position sweep lives in the acceptance suite
    key = rng.randbytes(32)
    blob = bytearray(encrypt(key, rng.randbytes(50)).serialize())
    for _ in range(64):
        pos = rng.randrange(len(blob))
        bit = 1 << rng.randrange(8)
        blob[pos] ^= bit
        with pytest.raises(AuthenticationFailed):
            decrypt(key, bytes(blob))
        blob[pos] ^= bit
    decrypt(key, bytes(blob))


def test_short_inputs_malformed(rng):
    key = rng.randbytes(32)
    with pytest.raises(MalformedMessage):
        decrypt(key, bytes(27))
    # 28 bytes is the minimum: an empty-plaintext message
    assert decrypt(key, encrypt(key, b"").serialize()) == b""


def test_oversize_plaintext_rejected(rng):
    with pytest.raises(MessageTooLong):
        encrypt(rng.randbytes(32), bytes(session.MAX_PLAINTEXT + 1))


def test_ciphertext_byte_histogram_roughly_uniform(rng):
    # coarse chi-squared sanity check, not a security argument
    key = rng.randbytes(32)
    ct = encrypt(key, bytes(1 << 20)).ciphertext
    counts = [0] * 256
    for b in ct:
        counts[b] += 1
    expected = len(ct) / 256
    chi2 = sum((c - expected) ** 2 / expected for c in counts)
    # chi-squared with 255 dof: mean 255, sd ~22.6; 400 is a generous ceiling
    assert chi2 < 400, chi2
