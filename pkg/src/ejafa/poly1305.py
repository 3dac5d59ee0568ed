"""Poly1305 one-time authenticator (RFC 8439 variant).

The key is 32 bytes r||s: r is clamped, the message is split into 16-byte
chunks, each chunk gets an 0x01 byte appended and is read as a little-endian
integer, the resulting polynomial is Horner-evaluated at r mod 2^130 - 5,
and s is added mod 2^128.  A key must authenticate exactly one message; the
session layer derives a fresh key per message.
"""

from ._backend import kernels
from .errors import InvalidLength

KEY_SIZE = 32
TAG_SIZE = 16

PRIME = (1 << 130) - 5
R_CLAMP_MASK = 0x0FFFFFFC0FFFFFFC0FFFFFFC0FFFFFFF


def clamp_r(r):
    """Clamped r as a little-endian integer."""
    if len(r) != 16:
        raise InvalidLength(f"r must be 16 bytes, got {len(r)}")
    return int.from_bytes(r, "little") & R_CLAMP_MASK


def poly1305_tag(key, message):
    """16-byte tag for `message` under the 32-byte one-time key r||s."""
    if len(key) != KEY_SIZE:
        raise InvalidLength(f"key must be {KEY_SIZE} bytes, got {len(key)}")
    return kernels.poly1305_tag(bytes(key), bytes(message))


def polynomial_hash(r, message):
    """The bare polynomial hash: unclamped r, no s addition.

    Internal reference form used to cross-check the full MAC in tests;
    interoperable with nothing on its own.
    """
    if len(r) != 16:
        raise InvalidLength(f"r must be 16 bytes, got {len(r)}")
    r_int = int.from_bytes(r, "little")
    acc = 0
    for i in range(0, len(message), 16):
        chunk = message[i:i + 16]
        acc = (acc + int.from_bytes(chunk + b"\x01", "little")) * r_int % PRIME
    return (acc % (1 << 128)).to_bytes(16, "little")


def tags_equal(a, b):
    """Constant-time tag comparison: full pass over both, no early exit."""
    if len(a) != len(b):
        return False
    acc = 0
    for x, y in zip(a, b):
        acc |= x ^ y
    return acc == 0
