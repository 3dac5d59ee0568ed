"""BLAKE2s sequential hashing (RFC 7693 subset) and HMAC over it.

Supports digest lengths 1..32 and the native keyed mode (key up to 32
bytes, padded into a prepended block).  The digest length is baked into
the parameter block, so a short digest is a different hash, not a
truncation.  No salt, personalization, or tree modes.
"""

from ._backend import kernels
from .errors import InvalidParam

MAX_DIGEST_SIZE = 32
MAX_KEY_SIZE = 32
BLOCK_SIZE = 64


def blake2s(data, key=b"", digest_length=32):
    if not 1 <= digest_length <= MAX_DIGEST_SIZE:
        raise InvalidParam(f"digest_length must be 1..{MAX_DIGEST_SIZE}, got {digest_length}")
    if len(key) > MAX_KEY_SIZE:
        raise InvalidParam(f"key must be at most {MAX_KEY_SIZE} bytes, got {len(key)}")
    return kernels.blake2s_digest(bytes(data), bytes(key), digest_length)


def hmac_blake2s(key, message):
    """RFC 2104 HMAC with BLAKE2s-256 and its 64-byte block size.

    Keys longer than one block are hashed first; the native keyed mode is
    deliberately not used here.
    """
    key = bytes(key)
    if len(key) > BLOCK_SIZE:
        key = blake2s(key)
    key = key + bytes(BLOCK_SIZE - len(key))
    inner = blake2s(bytes(k ^ 0x36 for k in key) + bytes(message))
    return blake2s(bytes(k ^ 0x5C for k in key) + inner)
