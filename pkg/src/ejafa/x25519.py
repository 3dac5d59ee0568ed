"""X25519 Diffie-Hellman over Curve25519 (RFC 7748).

Scalars are clamped before use, the input u-coordinate has its top bit
masked, and the ladder runs a fixed sequence of field operations with a
mask-driven conditional swap (no secret-dependent branches or indexing).
The all-zero output check is provided here but applied by the caller.
"""

import os
from dataclasses import dataclass

from ._backend import kernels
from .errors import InvalidLength

# y^2 = x^3 + 486662 x^2 + x over GF(2^255 - 19); the ladder uses
# a24 = (486662 - 2) / 4 = 121665.
P = 2**255 - 19
A = 486662
A24 = 121665

KEY_SIZE = 32
BASEPOINT = b"\x09" + bytes(31)  # u = 9, little-endian


@dataclass(frozen=True)
class PrivateScalar:
    """A 32-byte secret scalar: the raw entropy and its clamped form."""

    raw: bytes
    clamped: bytes


def clamp(raw):
    """Clamp 32 raw bytes into a valid scalar.

    Clears the low 3 bits (cofactor multiple) and bit 255, sets bit 254.
    """
    if len(raw) != KEY_SIZE:
        raise InvalidLength(f"scalar must be {KEY_SIZE} bytes, got {len(raw)}")
    k = bytearray(raw)
    k[0] &= 0b1111_1000
    k[31] &= 0b0111_1111
    k[31] |= 0b0100_0000
    return PrivateScalar(raw=bytes(raw), clamped=bytes(k))


def x25519(scalar, u):
    """Scalar-multiply the point with u-coordinate `u`; returns 32 bytes.

    Total on all 32-byte inputs: never raises for any point, including
    low-order ones (those simply produce the all-zero output).
    """
    scalar_bytes = scalar.clamped if isinstance(scalar, PrivateScalar) else scalar
    if len(scalar_bytes) != KEY_SIZE:
        raise InvalidLength(f"scalar must be {KEY_SIZE} bytes, got {len(scalar_bytes)}")
    if len(u) != KEY_SIZE:
        raise InvalidLength(f"u-coordinate must be {KEY_SIZE} bytes, got {len(u)}")
    return kernels.x25519_scalarmult(bytes(scalar_bytes), bytes(u))


def is_all_zero(k):
    """True iff all 32 bytes are zero, via one OR pass (no early exit)."""
    acc = 0
    for byte in k:
        acc |= byte
    return acc == 0


def generate_keypair(entropy=None):
    """Make a (PrivateScalar, public key bytes) pair.

    `entropy` is 32 bytes from a CSPRNG; pass it explicitly only in tests
    or for reproducible vectors, otherwise the OS RNG is used.
    """
    if entropy is None:
        entropy = os.urandom(KEY_SIZE)
    private = clamp(entropy)
    return private, x25519(private, BASEPOINT)
