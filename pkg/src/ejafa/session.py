"""Protocol core: key exchange, session-key derivation, encrypt-then-MAC.

A message on the wire is nonce (12) || ciphertext || tag (16) with no
internal length fields, a fixed 28-byte overhead.  The Poly1305 key for a
message is the first 32 bytes of ChaCha20 keystream block 0 for that
(session key, nonce); the payload uses blocks 1 and up, so the MAC key and
payload keystream never overlap.  The tag covers exactly nonce ||
ciphertext: there is no AAD and no length block, which is deliberate and
pinned by the golden vectors (it is NOT the RFC 8439 AEAD construction).
"""

import os
from dataclasses import dataclass

from . import x25519 as _x25519
from .chacha20 import chacha20_block, chacha20_xor
from .errors import AuthenticationFailed, LowOrderPeerKey, MalformedMessage, MessageTooLong
from .hkdf import hkdf_expand, hkdf_extract
from .poly1305 import poly1305_tag, tags_equal

NONCE_SIZE = 12
TAG_SIZE = 16
OVERHEAD = NONCE_SIZE + TAG_SIZE
# Largest plaintext whose serialized message still fits a transport frame.
MAX_PLAINTEXT = 2**24 - OVERHEAD - 1

KDF_INFO_PREFIX = b"ejafa/v1"


@dataclass(frozen=True)
class EncryptedMessage:
    nonce: bytes
    ciphertext: bytes
    tag: bytes

    def serialize(self):
        return self.nonce + self.ciphertext + self.tag

    @classmethod
    def parse(cls, data):
        if len(data) < OVERHEAD:
            raise MalformedMessage(
                f"serialized message needs at least {OVERHEAD} bytes, got {len(data)}")
        return cls(nonce=bytes(data[:NONCE_SIZE]),
                   ciphertext=bytes(data[NONCE_SIZE:-TAG_SIZE]),
                   tag=bytes(data[-TAG_SIZE:]))


def perform_key_exchange(own_priv, peer_pub):
    """Shared secret with the peer; aborts on a low-order peer key."""
    k = _x25519.x25519(own_priv, peer_pub)
    if _x25519.is_all_zero(k):
        raise LowOrderPeerKey("key exchange produced the all-zero shared secret")
    return k


def derive_session_key(shared_secret, pub_a, pub_b):
    """32-byte session key binding the secret to both public keys.

    The public keys enter the info string in lexicographic order, so both
    sides derive the same key without negotiating roles.
    """
    lo, hi = sorted((bytes(pub_a), bytes(pub_b)))
    info = KDF_INFO_PREFIX + lo + hi
    return hkdf_expand(hkdf_extract(b"", shared_secret), info, 32)


def mac_key(key, nonce):
    """One-time Poly1305 key: first half of keystream block 0."""
    return chacha20_block(key, 0, nonce)[:32]


def generate_mac(otk, nonce, ciphertext):
    return poly1305_tag(otk, bytes(nonce) + bytes(ciphertext))


def verify_mac(otk, nonce, ciphertext, tag):
    """True iff the recomputed tag matches, compared in constant time."""
    return tags_equal(generate_mac(otk, nonce, ciphertext), tag)


def encrypt(key, plaintext, nonce=None):
    """Encrypt-then-MAC under a session key; random nonce unless given."""
    if len(plaintext) > MAX_PLAINTEXT:
        raise MessageTooLong(f"plaintext of {len(plaintext)} bytes exceeds {MAX_PLAINTEXT}")
    if nonce is None:
        nonce = os.urandom(NONCE_SIZE)
    otk = mac_key(key, nonce)
    ciphertext = chacha20_xor(key, nonce, 1, plaintext)
    return EncryptedMessage(nonce=bytes(nonce), ciphertext=ciphertext,
                            tag=generate_mac(otk, nonce, ciphertext))


def decrypt(key, msg):
    """Verify the tag, then (and only then) recover the plaintext.

    Accepts an EncryptedMessage or its serialized bytes.  On a bad tag no
    payload keystream is generated at all.
    """
    if not isinstance(msg, EncryptedMessage):
        msg = EncryptedMessage.parse(msg)
    otk = mac_key(key, msg.nonce)
    if not verify_mac(otk, msg.nonce, msg.ciphertext, msg.tag):
        raise AuthenticationFailed("tag mismatch: message tampered or corrupted")
    return chacha20_xor(key, msg.nonce, 1, msg.ciphertext)
