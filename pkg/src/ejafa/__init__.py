"""Secure channel built from five primitives.

X25519 key exchange, ChaCha20 encryption, Poly1305 authentication, BLAKE2s
hashing, and HKDF key derivation, composed into an encrypt-then-MAC session
layer with length-prefixed framing over in-memory or TCP transports.

Hot kernels run from a compiled extension when available, with a
pure-Python fallback chosen at import (see ejafa._backend.BACKEND).
"""

from ._backend import BACKEND
from .blake2s import blake2s, hmac_blake2s
from .chacha20 import chacha20_block, chacha20_xor
from .channel import Frame, Role, SecureChannel, frame_decode, frame_encode
from .errors import (
    AuthenticationFailed,
    CounterExhausted,
    Disconnected,
    EjafaError,
    FrameTooLarge,
    HandshakeMalformed,
    InvalidIndex,
    InvalidLength,
    InvalidParam,
    LowOrderPeerKey,
    MalformedMessage,
    MessageTooLong,
    ReplayDetected,
    WrongDirection,
)
from .hkdf import hkdf, hkdf_expand, hkdf_extract
from .poly1305 import poly1305_tag
from .session import (
    EncryptedMessage,
    decrypt,
    derive_session_key,
    encrypt,
    perform_key_exchange,
)
# The scalar-multiplication function itself stays at ejafa.x25519.x25519 so
# the module attribute is not shadowed by a same-named function.
from .x25519 import BASEPOINT, PrivateScalar, clamp, generate_keypair, is_all_zero

__version__ = "0.1.0"
