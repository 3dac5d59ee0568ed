"""HKDF extract-and-expand (RFC 5869) over HMAC-BLAKE2s.

extract compresses input keying material into a 32-byte pseudorandom key;
expand stretches that key into up to 255 * 32 bytes of output via
counter-chained HMAC blocks (counter starts at 0x01).
"""

from .blake2s import hmac_blake2s
from .errors import InvalidLength

HASH_SIZE = 32
MAX_OUTPUT = 255 * HASH_SIZE


def hkdf_extract(salt, ikm):
    """32-byte pseudorandom key; empty salt means 32 zero bytes."""
    if not salt:
        salt = bytes(HASH_SIZE)
    return hmac_blake2s(salt, ikm)


def hkdf_expand(prk, info, length):
    """`length` bytes of output keying material from a 32-byte PRK."""
    if len(prk) != HASH_SIZE:
        raise InvalidLength(f"prk must be {HASH_SIZE} bytes, got {len(prk)}")
    if not 1 <= length <= MAX_OUTPUT:
        raise InvalidLength(f"length must be 1..{MAX_OUTPUT}, got {length}")
    info = bytes(info)
    out = b""
    block = b""
    counter = 1
    while len(out) < length:
        block = hmac_blake2s(prk, block + info + bytes((counter,)))
        out += block
        counter += 1
    return out[:length]


def hkdf(salt, ikm, info, length):
    """The composed form: expand(extract(salt, ikm), info, length)."""
    return hkdf_expand(hkdf_extract(salt, ikm), info, length)
