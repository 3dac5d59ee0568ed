"""Exception types raised across the package.

Everything derives from EjafaError so callers can catch protocol failures
with one handler; the CLI maps the important ones to exit codes.
"""


class EjafaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLength(EjafaError, ValueError):
    """A byte-string argument has the wrong length."""


class InvalidParam(EjafaError, ValueError):
    """A numeric parameter is outside its allowed range."""


class InvalidIndex(EjafaError, ValueError):
    """Quarter-round word indices are out of range or not distinct."""


class MessageTooLong(EjafaError):
    """Plaintext exceeds the per-nonce keystream or frame capacity."""


class LowOrderPeerKey(EjafaError):
    """Key exchange produced the all-zero shared secret; peer key rejected."""


class AuthenticationFailed(EjafaError):
    """MAC verification failed; the message was tampered with or corrupted."""


class MalformedMessage(EjafaError):
    """Serialized message is too short to contain nonce and tag."""


class FrameTooLarge(EjafaError):
    """Frame length field exceeds the 16 MiB cap."""


class HandshakeMalformed(EjafaError):
    """Handshake frame did not carry exactly one 32-byte public key."""


class Disconnected(EjafaError):
    """Transport reached end-of-stream mid-message."""


class ReplayDetected(EjafaError):
    """Received counter does not exceed the high watermark."""


class WrongDirection(EjafaError):
    """Message carries the receiver's own direction byte."""


class CounterExhausted(EjafaError):
    """Send counter reached its 64-bit limit; re-establish the session."""
